"""Shared invariant battery run on randomized market/cone/claim instances.

Used by the property tests (moderate sample) and the acceptance suite
(full >= 500-instance battery).  Every check is an exact rational equality
or inequality; every certificate is re-verified by the independent checker.
"""

from fractions import Fraction

from collective_arb import verify
from collective_arb.arbitrage import (detect_NA_agent, detect_NA_global,
                                      detect_NCA, emm_is_singleton,
                                      find_emm_vector, polar_witness)
from collective_arb.cones import cone_add, make_Y0
from collective_arb.ext import Ext
from collective_arb.market import agents_join_partition
from collective_arb.pricing import (claim_vector, dual_rho_Y, fairness_allocation,
                                    pi_N_plus, pi_Y_plus, rho_agent_plus,
                                    rho_agent_plus_dual, rho_full_market,
                                    rho_N_minus, rho_N_plus, rho_Y_minus,
                                    rho_Y_plus, value_of_cooperation)

F = Fraction


def check_instance(market, cone, info, claims, rng):
    """Run the full invariant battery; returns a dict of which theorem-level
    branches were exercised (for coverage accounting)."""
    hit = {"emm_equiv": False, "nca_holds": False, "rho_finite": False,
           "t0_cone": False, "terminal_y0": False, "singleton": False}

    # -- detection with two-sided certificates ------------------------------
    na_agents = []
    for i in range(market.n_agents):
        cert = detect_NA_agent(market, i)
        if cert.found:
            verify.verify_arbitrage_found(market, cert, agent=i)
        else:
            verify.verify_single_market_witness(market, cert.dual_witness[0], agent=i)
        na_agents.append(cert)
    na_global = detect_NA_global(market)
    if na_global.found:
        verify.verify_arbitrage_found(market, na_global)
    else:
        verify.verify_single_market_witness(market, na_global.dual_witness[0])

    nca = detect_NCA(market, cone)
    if nca.found:
        verify.verify_arbitrage_found(market, nca, cone=cone)
    else:
        hit["nca_holds"] = True
        verify.verify_polar_witness(market, cone, nca.dual_witness)

    # (b) strictly positive polar element iff no collective arbitrage
    z = polar_witness(market, cone)
    assert (z is not None) == (not nca.found)
    if z is not None:
        verify.verify_polar_witness(market, cone, z.rows, strict=True)

    # (a) equivalent measure vector iff no collective arbitrage, given all
    # deterministic zero-sum transfers are allowed
    mv = find_emm_vector(market, cone)
    if mv is not None:
        verify.verify_measure_vector(market, cone, mv, strict=True)
        hit["emm_equiv"] = True
    if cone.meta.contains_RN0:
        assert (mv is not None) == (not nca.found)

    # measure vectors for transfer cones settled at time t agree across
    # agents on every time-t information block
    if info["kind"] == "y0" and mv is not None:
        part = agents_join_partition(market, info["t"])
        for block in part:
            masses = [sum(mv.densities[i][w] for w in block)
                      for i in range(market.n_agents)]
            assert all(m == masses[0] for m in masses)

    # (f) one-way implication lattice on zero-sum cones
    assert cone.meta.is_zero_sum
    if not na_global.found:
        assert not nca.found
    if not nca.found:
        assert all(not c.found for c in na_agents)

    # (g) deterministic cones: collective no-arbitrage collapses to the
    # componentwise condition
    if cone.meta.measurable_at == 0:
        hit["t0_cone"] = True
        assert (not nca.found) == all(not c.found for c in na_agents)

    # (h) all terminal zero-sum transfers: collapse to the global market
    terminal_y0 = info["kind"] == "y0" and info["t"] == market.T
    if terminal_y0:
        hit["terminal_y0"] = True
        assert (not nca.found) == (not na_global.found)

    # -- pricing ------------------------------------------------------------
    rho_i = []
    for i in range(market.n_agents):
        v, opt = rho_agent_plus(market, i, claims.rows[i])
        assert v == rho_agent_plus_dual(market, i, claims.rows[i])
        rho_i.append(v)
    rho_n = rho_N_plus(market, claims)
    assert rho_n == sum(rho_i[1:], rho_i[0])
    pi_n = pi_N_plus(market, claims)  # internally cross-checked

    rho_y, opt = rho_Y_plus(market, cone, claims)
    pi_y, _ = pi_Y_plus(market, cone, claims)
    assert rho_y <= rho_n and pi_y <= pi_n
    if opt is not None:
        verify.verify_primal_optimizer(market, cone, claims, opt, rho_y.value)

    # (c) pricing-hedging duality, including the unbounded case
    dual_v, dual_mv = dual_rho_Y(market, cone, claims)
    assert dual_v == rho_y
    if dual_mv is not None:
        verify.verify_measure_vector(market, cone, dual_mv, strict=False)

    # (d) symmetrisation under deterministic transfers
    if cone.meta.contains_RN0:
        assert rho_y == pi_y * market.n_agents

    if terminal_y0:
        pooled = [sum(col) for col in zip(*claims.rows)]
        assert rho_y == rho_full_market(market, pooled)

    # (e) exchange cone absorbing the deterministic transfers
    widened = cone_add(market, cone, make_Y0(market, 0))
    rho_w, _ = rho_Y_plus(market, widened, claims)
    assert rho_w == rho_y

    if cone.meta.contains_RN0 and not nca.found:
        hit["rho_finite"] = rho_y.finite
        zero = claim_vector(market, [["0"] * market.n_atoms] * market.n_agents)
        v0, _ = rho_Y_plus(market, cone, zero)
        assert v0 == Ext.of(0)
        c = [F(rng.randint(-4, 4)) for _ in range(market.n_agents)]
        shifted = claim_vector(market, [
            [F(v) + c[i] for v in claims.rows[i]] for i in range(market.n_agents)])
        v_shift, _ = rho_Y_plus(market, cone, shifted)
        assert v_shift == rho_y + Ext.of(sum(c))
        bumps = [[F(rng.randint(0, 3)) for _ in range(market.n_atoms)]
                 for _ in range(market.n_agents)]
        bigger = claim_vector(market, [
            [F(v) + b for v, b in zip(claims.rows[i], bumps[i])]
            for i in range(market.n_agents)])
        v_big, _ = rho_Y_plus(market, cone, bigger)
        assert rho_y <= v_big

        # (i) fairness identities
        fr = fairness_allocation(market, cone, claims)
        verify.verify_fairness(market, cone, claims, fr)
        for i in range(market.n_agents):
            assert Ext.of(fr.allocations[i]) <= rho_i[i]

        single = emm_is_singleton(market, cone)
        if single is not None:
            hit["singleton"] = True
            expect = sum(sum(q * F(v) for q, v in zip(single.densities[i], claims.rows[i]))
                         for i in range(market.n_agents))
            assert rho_y == Ext.of(expect)

    coop = value_of_cooperation(market, cone, claims)
    assert coop["selling"] >= Ext.of(0)
    assert coop["total"] >= Ext.of(0)
    assert rho_Y_minus(market, cone, claims) >= rho_N_minus(market, claims)
    return hit
