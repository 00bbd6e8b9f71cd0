"""Super- and sub-replication pricing, duality, fairness and cooperation.

All price functionals are exact LPs over the gains generators and the
exchange-cone generators; -inf and +inf are first-class outcomes mapped
from LP unboundedness.  The dual of the collective super-replication price
is computed on an independent formulation: the polytope of martingale
measure vectors compatible with the exchange cone when the cone contains
all deterministic zero-sum transfers, and otherwise a program posed over
the polyhedral description of the polar of the super-replicable set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .arbitrage import MeasureVector, install_emm_system
from .cones import ExchangeCone, combination_rows
from .errors import FairnessUnavailable, InternalInvariantError, ValidationError
from .ext import Ext, ext_max, ext_sum
from .lp import EQ, GE, LE, LPBuilder, MAX, MIN, ZERO, frac
from .market import (MarketModel, PayoffMatrix, constant_on, gains_basis,
                     payoff_matrix, synthetic_full_agent)

ClaimVector = PayoffMatrix  # one claim row per agent, measurable per row


def claim_vector(market: MarketModel, rows) -> ClaimVector:
    return payoff_matrix(market, rows, where="claims")


def _dot(a, b) -> Fraction:
    return sum((frac(x) * frac(y) for x, y in zip(a, b)), ZERO)


@dataclass(frozen=True)
class PrimalOptimizer:
    m: tuple
    strategy_coeffs: tuple
    gains_rows: tuple
    ray_coeffs: tuple
    lin_coeffs: tuple
    exchange_rows: tuple


@dataclass(frozen=True)
class FairnessResult:
    value: Fraction
    q_hat: MeasureVector
    allocations: tuple          # E_{Q_i}[g_i] per agent
    m_tilde: tuple
    y_tilde_rows: tuple         # canonical exchange, zero cost under q_hat
    y_tilde_ray_coeffs: tuple
    y_tilde_lin_coeffs: tuple
    k_tilde_coeffs: tuple       # strategies accompanying the exchange
    shift: tuple                # dual cost of the raw optimizer's exchange
    raw: PrimalOptimizer
    per_agent_prices: tuple     # individual replication cost under q_hat_i


# ---------------------------------------------------------------------------
# classical single-market prices
# ---------------------------------------------------------------------------


def rho_agent_plus(market: MarketModel, agent: int, claim_row):
    """Least cash m such that m plus some zero-cost gain dominates the claim.

    Returns (Ext value, optimizer dict or None); -inf exactly when the
    agent's martingale polytope is empty (a scalable everywhere-positive
    gain exists)."""
    row = tuple(frac(v) for v in claim_row)
    if not constant_on(row, market.terminal_partition(agent)):
        raise ValidationError("claim", "row not measurable for the agent")
    gens = gains_basis(market, agent)
    b = LPBuilder(MIN)
    b.var("m", obj=1)
    for k in range(len(gens)):
        b.var(f"h{k}")
    for w in range(market.n_atoms):
        coeffs = {"m": Fraction(1)}
        for k, g in enumerate(gens):
            if g.vector[w]:
                coeffs[f"h{k}"] = g.vector[w]
        b.row(f"dom{w}", coeffs, GE, row[w])
    sol = b.solve()
    if sol.status == "unbounded":
        return Ext.neg_inf(), None
    assert sol.status == "optimal"
    p = sol.primal()
    coeffs = tuple(p[f"h{k}"] for k in range(len(gens)))
    gains = tuple(sum((c * g.vector[w] for c, g in zip(coeffs, gens)), ZERO)
                  for w in range(market.n_atoms))
    return Ext.of(sol.value), {"m": p["m"], "strategy": coeffs, "gains_row": gains}


def rho_agent_plus_dual(market: MarketModel, agent: int, claim_row) -> Ext:
    """Classical dual: supremum of the claim's expectation over the agent's
    martingale polytope (empty polytope reads as -inf)."""
    from .arbitrage import martingale_polytope

    row = tuple(frac(v) for v in claim_row)
    b = LPBuilder(MAX)
    names = martingale_polytope(market, agent).install(b, "q")
    for w, v in enumerate(names):
        if row[w]:
            b.add_objective(v, row[w])
    sol = b.solve()
    if sol.status == "infeasible":
        return Ext.neg_inf()
    assert sol.status == "optimal"
    return Ext.of(sol.value)


def rho_N_plus(market: MarketModel, g: ClaimVector) -> Ext:
    """Total cost of replicating every claim without cooperation."""
    return ext_sum(rho_agent_plus(market, i, g.rows[i])[0]
                   for i in range(market.n_agents))


def pi_N_plus(market: MarketModel, g: ClaimVector) -> Ext:
    """Least single amount covering any one claim without cooperation;
    computed both as max of the per-agent prices and by its defining LP."""
    per_agent = ext_max(rho_agent_plus(market, i, g.rows[i])[0]
                        for i in range(market.n_agents))
    b = LPBuilder(MIN)
    b.var("m", obj=1)
    for i in range(market.n_agents):
        for k in range(len(gains_basis(market, i))):
            b.var(f"h{i}_{k}")
    for i in range(market.n_agents):
        gens = gains_basis(market, i)
        for w in range(market.n_atoms):
            coeffs = {"m": Fraction(1)}
            for k, gen in enumerate(gens):
                if gen.vector[w]:
                    coeffs[f"h{i}_{k}"] = gen.vector[w]
            b.row(f"dom{i}_{w}", coeffs, GE, g.rows[i][w])
    sol = b.solve()
    direct = Ext.neg_inf() if sol.status == "unbounded" else Ext.of(sol.value)
    if direct != per_agent:
        raise InternalInvariantError("single-claim price disagrees with per-agent maximum")
    return per_agent


# ---------------------------------------------------------------------------
# collective prices
# ---------------------------------------------------------------------------


def _collective_lp(market: MarketModel, cone: ExchangeCone, g: ClaimVector,
                   shared_m: bool) -> LPBuilder:
    b = LPBuilder(MIN)
    if shared_m:
        b.var("m", obj=1)
    else:
        for i in range(market.n_agents):
            b.var(f"m{i}", obj=1)
    for i in range(market.n_agents):
        for k in range(len(gains_basis(market, i))):
            b.var(f"h{i}_{k}")
    for k in range(len(cone.rays)):
        b.var(f"mu{k}", lo=0)
    for k in range(len(cone.lineality)):
        b.var(f"nu{k}")
    for i in range(market.n_agents):
        gens = gains_basis(market, i)
        for w in range(market.n_atoms):
            coeffs = {"m" if shared_m else f"m{i}": Fraction(1)}
            for k, gen in enumerate(gens):
                if gen.vector[w]:
                    coeffs[f"h{i}_{k}"] = gen.vector[w]
            for k, r in enumerate(cone.rays):
                if r.rows[i][w]:
                    coeffs[f"mu{k}"] = r.rows[i][w]
            for k, l in enumerate(cone.lineality):
                if l.rows[i][w]:
                    coeffs[f"nu{k}"] = l.rows[i][w]
            b.row(f"dom{i}_{w}", coeffs, GE, g.rows[i][w])
    return b


def _extract_optimizer(market, cone, sol, shared_m) -> PrimalOptimizer:
    p = sol.primal()
    if shared_m:
        m = tuple(p["m"] for _ in range(market.n_agents))
    else:
        m = tuple(p[f"m{i}"] for i in range(market.n_agents))
    strat, rows = [], []
    for i in range(market.n_agents):
        gens = gains_basis(market, i)
        coeffs = tuple(p[f"h{i}_{k}"] for k in range(len(gens)))
        strat.append(coeffs)
        rows.append(tuple(sum((c * gen.vector[w] for c, gen in zip(coeffs, gens)), ZERO)
                          for w in range(market.n_atoms)))
    mu = tuple(p[f"mu{k}"] for k in range(len(cone.rays)))
    nu = tuple(p[f"nu{k}"] for k in range(len(cone.lineality)))
    return PrimalOptimizer(m=m, strategy_coeffs=tuple(strat), gains_rows=tuple(rows),
                           ray_coeffs=mu, lin_coeffs=nu,
                           exchange_rows=combination_rows(cone, mu, nu))


def rho_Y_plus(market: MarketModel, cone: ExchangeCone, g: ClaimVector):
    """Collective super-replication: least total cash so that, with trading
    and one exchange from the cone, every agent dominates its claim."""
    sol = _collective_lp(market, cone, g, shared_m=False).solve()
    if sol.status == "unbounded":
        return Ext.neg_inf(), None
    assert sol.status == "optimal"
    return Ext.of(sol.value), _extract_optimizer(market, cone, sol, shared_m=False)


def pi_Y_plus(market: MarketModel, cone: ExchangeCone, g: ClaimVector):
    """Least single amount covering any one of the claims with cooperation."""
    sol = _collective_lp(market, cone, g, shared_m=True).solve()
    if sol.status == "unbounded":
        return Ext.neg_inf(), None
    assert sol.status == "optimal"
    return Ext.of(sol.value), _extract_optimizer(market, cone, sol, shared_m=True)


def rho_Y_minus(market: MarketModel, cone: ExchangeCone, g: ClaimVector) -> Ext:
    """Collective sub-replication via the reflection identity rho_-(g) =
    -rho_+(-g)."""
    neg = PayoffMatrix(rows=tuple(tuple(-v for v in r) for r in g.rows))
    value, _ = rho_Y_plus(market, cone, neg)
    return -value


def pi_Y_minus(market: MarketModel, cone: ExchangeCone, g: ClaimVector) -> Ext:
    neg = PayoffMatrix(rows=tuple(tuple(-v for v in r) for r in g.rows))
    value, _ = pi_Y_plus(market, cone, neg)
    return -value


def rho_N_minus(market: MarketModel, g: ClaimVector) -> Ext:
    neg = PayoffMatrix(rows=tuple(tuple(-v for v in r) for r in g.rows))
    return -rho_N_plus(market, neg)


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------


def _dual_emm_route(market: MarketModel, cone: ExchangeCone, g: ClaimVector):
    """sup of the total claim expectation over compatible measure vectors;
    the optimizer returned is the canonical interior point of the optimal
    face (maximal minimum atom probability)."""
    b = LPBuilder(MAX)
    names = install_emm_system(b, market, cone)
    for i in range(market.n_agents):
        for w in range(market.n_atoms):
            if g.rows[i][w]:
                b.add_objective(names[i][w], g.rows[i][w])
    sol = b.solve()
    if sol.status == "infeasible":
        return Ext.neg_inf(), None
    assert sol.status == "optimal"
    value = sol.value

    b2 = LPBuilder(MAX)
    eps = b2.var("eps", obj=1)
    names = install_emm_system(b2, market, cone)
    goal = {}
    for i in range(market.n_agents):
        for w in range(market.n_atoms):
            if g.rows[i][w]:
                goal[names[i][w]] = g.rows[i][w]
            b2.row(f"int{i}_{w}", {names[i][w]: Fraction(1), eps: Fraction(-1)}, GE, 0)
    b2.row("opt_face", goal, EQ, value)
    sol2 = b2.solve()
    assert sol2.status == "optimal"
    p = sol2.primal()
    mv = MeasureVector(densities=tuple(tuple(p[v] for v in row) for row in names))
    return Ext.of(value), mv


def _polar_description(market: MarketModel, cone: ExchangeCone):
    """Rows M with polar = {z : M z <= 0}, z indexed by (agent, atom);
    expectations weighted by the reference probabilities."""
    P = market.space.prob
    N, n = market.n_agents, market.n_atoms
    rows = []

    def embed(i, vec):
        out = [ZERO] * (N * n)
        for w in range(n):
            if vec[w]:
                out[i * n + w] = P[w] * vec[w]
        return out

    for i in range(N):
        for w in range(n):
            row = [ZERO] * (N * n)
            row[i * n + w] = Fraction(-1)
            rows.append(row)
    for i in range(N):
        for gen in gains_basis(market, i):
            e = embed(i, gen.vector)
            rows.append(e)
            rows.append([-v for v in e])
    for r in cone.rays:
        acc = [ZERO] * (N * n)
        for i in range(N):
            for w in range(n):
                if r.rows[i][w]:
                    acc[i * n + w] += P[w] * r.rows[i][w]
        rows.append(acc)
    for l in cone.lineality:
        acc = [ZERO] * (N * n)
        for i in range(N):
            for w in range(n):
                if l.rows[i][w]:
                    acc[i * n + w] += P[w] * l.rows[i][w]
        rows.append(acc)
        rows.append([-v for v in acc])
    return rows


def _dual_polar_route(market: MarketModel, cone: ExchangeCone, g: ClaimVector):
    """General-cone dual: minimise total cash whose weighted value dominates
    the claim's against every polar element.  The semi-infinite constraint
    over the polyhedral polar is reduced by duality to the existence of
    nonnegative multipliers on the polar's description rows."""
    P = market.space.prob
    N, n = market.n_agents, market.n_atoms
    M = _polar_description(market, cone)
    b = LPBuilder(MIN)
    for i in range(N):
        b.var(f"m{i}", obj=1)
    for k in range(len(M)):
        b.var(f"y{k}", lo=0)
    for i in range(N):
        for w in range(n):
            col = i * n + w
            coeffs = {f"m{i}": P[w]}
            for k, row in enumerate(M):
                if row[col]:
                    coeffs[f"y{k}"] = row[col]
            b.row(f"eq{i}_{w}", coeffs, EQ, P[w] * g.rows[i][w])
    sol = b.solve()
    if sol.status == "unbounded":
        return Ext.neg_inf(), None
    assert sol.status == "optimal"
    return Ext.of(sol.value), None


def dual_rho_Y(market: MarketModel, cone: ExchangeCone, g: ClaimVector):
    """Dual value of the collective super-replication price, plus the
    maximizing measure vector when the polar normalises to probabilities."""
    if cone.meta.contains_RN0:
        return _dual_emm_route(market, cone, g)
    return _dual_polar_route(market, cone, g)


# ---------------------------------------------------------------------------
# fairness
# ---------------------------------------------------------------------------


def rho_under_measure(market: MarketModel, agent: int, q_row, claim_row) -> Fraction:
    """Individual super-replication when the agent prices with a fixed
    measure: trading plus any own-measurable instrument with zero cost
    under that measure."""
    gens = gains_basis(market, agent)
    blocks = market.terminal_partition(agent)
    b = LPBuilder(MIN)
    b.var("m", obj=1)
    for k in range(len(gens)):
        b.var(f"h{k}")
    for k in range(len(blocks)):
        b.var(f"y{k}")
    cost = {}
    for k, blk in enumerate(blocks):
        c = sum((frac(q_row[w]) for w in blk), ZERO)
        if c:
            cost[f"y{k}"] = c
    b.row("zero_cost", cost, EQ, 0)
    for w in range(market.n_atoms):
        blk_idx = next(k for k, blk in enumerate(blocks) if w in blk)
        coeffs = {"m": Fraction(1), f"y{blk_idx}": Fraction(1)}
        for k, gen in enumerate(gens):
            if gen.vector[w]:
                coeffs[f"h{k}"] = gen.vector[w]
        b.row(f"dom{w}", coeffs, GE, claim_row[w])
    sol = b.solve()
    if sol.status != "optimal":
        raise InternalInvariantError("per-agent fair price LP not optimal")
    return sol.value


def fairness_allocation(market: MarketModel, cone: ExchangeCone,
                        g: ClaimVector) -> FairnessResult:
    """Shift a primal optimizer by a deterministic zero-sum vector so each
    agent's exchange has zero cost under the dual-optimal measure vector;
    the resulting per-agent costs are the fairness allocation."""
    if not cone.meta.contains_RN0:
        raise FairnessUnavailable(
            "fairness needs the cone to contain all deterministic zero-sum transfers")
    dual_value, q_hat = dual_rho_Y(market, cone, g)
    if not dual_value.finite or q_hat is None:
        raise FairnessUnavailable("collective super-replication price is not finite")
    primal_value, opt = rho_Y_plus(market, cone, g)
    if primal_value != dual_value:
        raise InternalInvariantError("pricing-hedging duality gap detected")

    N = market.n_agents
    shift = tuple(_dot(q_hat.densities[i], opt.exchange_rows[i]) for i in range(N))
    if sum(shift) != 0:
        raise InternalInvariantError("dual-optimal exchange values do not net to zero")
    m_tilde = tuple(opt.m[i] + shift[i] for i in range(N))

    allocations = tuple(_dot(q_hat.densities[i], g.rows[i]) for i in range(N))
    if any(m_tilde[i] != allocations[i] for i in range(N)):
        raise InternalInvariantError("adjusted costs differ from allocated expectations")
    if sum(m_tilde, ZERO) != primal_value.value:
        raise InternalInvariantError("allocations do not sum to the collective price")

    mu, nu, k_coeffs, y_rows = _minimal_transfer_optimizer(market, cone, g,
                                                           m_tilde, q_hat)
    for i in range(N):
        if _dot(q_hat.densities[i], y_rows[i]) != 0:
            raise InternalInvariantError("adjusted exchange has nonzero dual cost")

    per_agent = []
    for i in range(N):
        individual, _ = rho_agent_plus(market, i, g.rows[i])
        if not (Ext.of(allocations[i]) <= individual):
            raise InternalInvariantError("allocation exceeds individual price")
        per_agent.append(rho_under_measure(market, i, q_hat.densities[i], g.rows[i]))
        if per_agent[i] != allocations[i]:
            raise InternalInvariantError("per-agent fair price differs from allocation")
    return FairnessResult(value=primal_value.value, q_hat=q_hat,
                          allocations=allocations, m_tilde=m_tilde,
                          y_tilde_rows=y_rows, y_tilde_ray_coeffs=mu,
                          y_tilde_lin_coeffs=nu, k_tilde_coeffs=k_coeffs,
                          shift=shift, raw=opt, per_agent_prices=tuple(per_agent))


def _minimal_transfer_optimizer(market, cone, g, m_tilde, q_hat):
    """Among all optimizers at the fixed fair costs with zero-dual-cost
    exchanges, pick the one moving the least total cash (minimal L1 norm of
    the exchange rows); canonical and reproducible."""
    N, n = market.n_agents, market.n_atoms
    b = LPBuilder(MIN)
    for i in range(N):
        for k in range(len(gains_basis(market, i))):
            b.var(f"h{i}_{k}")
    for k in range(len(cone.rays)):
        b.var(f"mu{k}", lo=0)
    for k in range(len(cone.lineality)):
        b.var(f"nu{k}")
    for i in range(N):
        for w in range(n):
            b.var(f"abs{i}_{w}", lo=0, obj=1)

    def exchange_coeffs(i, w):
        coeffs = {}
        for k, r in enumerate(cone.rays):
            if r.rows[i][w]:
                coeffs[f"mu{k}"] = r.rows[i][w]
        for k, l in enumerate(cone.lineality):
            if l.rows[i][w]:
                coeffs[f"nu{k}"] = l.rows[i][w]
        return coeffs

    for i in range(N):
        gens = gains_basis(market, i)
        zero_cost = {}
        for w in range(n):
            ex = exchange_coeffs(i, w)
            dom = dict(ex)
            for k, gen in enumerate(gens):
                if gen.vector[w]:
                    dom[f"h{i}_{k}"] = dom.get(f"h{i}_{k}", ZERO) + gen.vector[w]
            b.row(f"dom{i}_{w}", dom, GE, g.rows[i][w] - m_tilde[i])
            plus = dict(ex)
            plus[f"abs{i}_{w}"] = Fraction(-1)
            b.row(f"absp{i}_{w}", plus, LE, 0)
            minus = {v: -c for v, c in ex.items()}
            minus[f"abs{i}_{w}"] = Fraction(-1)
            b.row(f"absm{i}_{w}", minus, LE, 0)
            q = q_hat.densities[i][w]
            if q:
                for v, c in ex.items():
                    zero_cost[v] = zero_cost.get(v, ZERO) + q * c
        b.row(f"cost{i}", zero_cost, EQ, 0)
    sol = b.solve()
    if sol.status != "optimal":
        raise InternalInvariantError("minimal-transfer canonicalisation failed")
    p = sol.primal()
    mu = tuple(p[f"mu{k}"] for k in range(len(cone.rays)))
    nu = tuple(p[f"nu{k}"] for k in range(len(cone.lineality)))
    k_coeffs = tuple(tuple(p[f"h{i}_{k}"]
                           for k in range(len(gains_basis(market, i))))
                     for i in range(N))
    return mu, nu, k_coeffs, combination_rows(cone, mu, nu)


# ---------------------------------------------------------------------------
# cooperation value, price compatibility, full-market collapse
# ---------------------------------------------------------------------------


def value_of_cooperation(market: MarketModel, cone: ExchangeCone, g: ClaimVector):
    """Savings from cooperation on the selling side and in total."""
    rho_n = rho_N_plus(market, g)
    rho_y, _ = rho_Y_plus(market, cone, g)
    selling = Ext.of(0) if rho_n == rho_y else rho_n - rho_y
    rho_nm = rho_N_minus(market, g)
    rho_ym = rho_Y_minus(market, cone, g)
    buying = Ext.of(0) if rho_ym == rho_nm else rho_ym - rho_nm
    total = selling + buying
    return {"selling": selling, "buying": buying, "total": total}


@dataclass(frozen=True)
class PriceCompatibility:
    compatible: bool                 # no riskless gain at the quoted prices
    scalar_cost_compatible: Optional[bool]  # sum of prices <= collective price
    witness: Optional[dict] = None


def price_compatibility(market: MarketModel, cone: ExchangeCone, g: ClaimVector,
                        prices: Sequence) -> PriceCompatibility:
    """Selling the claims at the quoted prices: do trading plus an exchange
    make every agent's final position nonnegative and someone's positive?"""
    p = tuple(frac(v) for v in prices)
    if len(p) != market.n_agents:
        raise ValidationError("prices", "need one price per agent")
    n = market.n_atoms
    b = LPBuilder(MAX)
    for i in range(market.n_agents):
        for k in range(len(gains_basis(market, i))):
            b.var(f"h{i}_{k}")
    for k in range(len(cone.rays)):
        b.var(f"mu{k}", lo=0)
    for k in range(len(cone.lineality)):
        b.var(f"nu{k}")
    total_obj = {}
    offset = ZERO
    for i in range(market.n_agents):
        gens = gains_basis(market, i)
        for w in range(n):
            coeffs = {}
            for k, gen in enumerate(gens):
                if gen.vector[w]:
                    coeffs[f"h{i}_{k}"] = gen.vector[w]
            for k, r in enumerate(cone.rays):
                if r.rows[i][w]:
                    coeffs[f"mu{k}"] = r.rows[i][w]
            for k, l in enumerate(cone.lineality):
                if l.rows[i][w]:
                    coeffs[f"nu{k}"] = l.rows[i][w]
            b.row(f"pos{i}_{w}", coeffs, GE, g.rows[i][w] - p[i])
            offset += p[i] - g.rows[i][w]
            for v, c in coeffs.items():
                total_obj[v] = total_obj.get(v, ZERO) + c
    for v, c in total_obj.items():
        b.add_objective(v, c)
    sol = b.solve()

    rho_y, _ = rho_Y_plus(market, cone, g)
    scalar_ok = None
    if rho_y.finite:
        scalar_ok = Ext.of(sum(p, ZERO)) <= rho_y
    elif rho_y == Ext.neg_inf():
        scalar_ok = False

    if sol.status == "infeasible":
        return PriceCompatibility(compatible=True, scalar_cost_compatible=scalar_ok)
    if sol.status == "optimal":
        gain = sol.value + offset
        if gain <= 0:
            return PriceCompatibility(compatible=True, scalar_cost_compatible=scalar_ok)
        point = sol.primal()
    else:
        # ride the improving ray far enough for a strictly positive total
        point = sol.primal()
        ray = sol.ray()
        base = sum((c * point[v] for v, c in total_obj.items()), ZERO) + offset
        slope = sum((c * ray[v] for v, c in total_obj.items()), ZERO)
        assert slope > 0
        tau = (Fraction(1) - base) / slope
        if tau < 0:
            tau = ZERO
        point = {v: point[v] + tau * ray[v] for v in point}
    strat = tuple(tuple(point[f"h{i}_{k}"] for k in range(len(gains_basis(market, i))))
                  for i in range(market.n_agents))
    mu = tuple(point[f"mu{k}"] for k in range(len(cone.rays)))
    nu = tuple(point[f"nu{k}"] for k in range(len(cone.lineality)))
    witness = {"strategies": strat, "ray_coeffs": mu, "lin_coeffs": nu,
               "exchange_rows": combination_rows(cone, mu, nu)}
    return PriceCompatibility(compatible=False, scalar_cost_compatible=scalar_ok,
                              witness=witness)


def rho_full_market(market: MarketModel, pooled_claim) -> Ext:
    """Classical super-replication of one pooled claim in the full market
    (a synthetic agent owning every asset under the global filtration)."""
    full = synthetic_full_agent(market)
    row = tuple(frac(v) for v in pooled_claim)
    value, _ = rho_agent_plus(full, 0, row)
    return value
