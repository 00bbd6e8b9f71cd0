"""Arbitrage detection and martingale-measure machinery.

Detection operations return two-sided certificates: either explicit
strategies (plus an exchange) realizing a riskless gain, or a strictly
positive dual object -- a martingale measure, a vector of martingale
measures compatible with the exchange cone, or a positive element of the
polar of the super-replicable set.  Each side re-verifies by plain
arithmetic; the pair of tests realizes, and constantly exercises, the
collective version of the fundamental theorem of asset pricing on finite
outcome spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cones import ExchangeCone, combination_rows
from .errors import InternalInvariantError, ValidationError
from .lp import EQ, GE, LE, LPBuilder, MAX, MIN, ZERO
from .market import (MarketModel, PayoffMatrix, full_gains_basis,
                     gains_basis)


@dataclass(frozen=True)
class MeasureVector:
    """One probability row per agent, stored directly as atom probabilities."""

    densities: tuple

    @property
    def equivalent(self) -> bool:
        return all(v > 0 for row in self.densities for v in row)


@dataclass(frozen=True)
class ExchangePart:
    ray_coeffs: tuple
    lin_coeffs: tuple
    rows: tuple


@dataclass(frozen=True)
class ArbitrageCertificate:
    """found=True carries strategies and the exchange; found=False carries a
    strictly positive dual witness (one row per participating market)."""

    found: bool
    strategy_coeffs: Optional[tuple] = None   # per agent, aligned with its gains basis
    gains_rows: Optional[tuple] = None
    exchange: Optional[ExchangePart] = None
    dual_witness: Optional[tuple] = None


def _gains_row(gens, coeffs, n_atoms) -> tuple:
    row = [ZERO] * n_atoms
    for g, c in zip(gens, coeffs):
        if c:
            for w in range(n_atoms):
                row[w] += c * g.vector[w]
    return tuple(row)


# ---------------------------------------------------------------------------
# primal side: search for an arbitrage
# ---------------------------------------------------------------------------


def _search_arbitrage(market: MarketModel, gens_per_row, cone: Optional[ExchangeCone]):
    """Feasibility of: each row's gains plus exchange nonnegative everywhere,
    with total payoff at least one unit.  Gains and exchanges scale, so the
    unit normalisation is equivalent to 'positive somewhere'."""
    n = market.n_atoms
    b = LPBuilder(MIN)
    for i, gens in enumerate(gens_per_row):
        for k in range(len(gens)):
            b.var(f"h{i}_{k}")
    nrays = len(cone.rays) if cone else 0
    nlins = len(cone.lineality) if cone else 0
    for k in range(nrays):
        b.var(f"mu{k}", lo=0)
    for k in range(nlins):
        b.var(f"nu{k}")

    total = {}
    for i, gens in enumerate(gens_per_row):
        for w in range(n):
            coeffs = {}
            for k, g in enumerate(gens):
                if g.vector[w]:
                    coeffs[f"h{i}_{k}"] = g.vector[w]
            if cone:
                for k, r in enumerate(cone.rays):
                    if r.rows[i][w]:
                        coeffs[f"mu{k}"] = r.rows[i][w]
                for k, l in enumerate(cone.lineality):
                    if l.rows[i][w]:
                        coeffs[f"nu{k}"] = l.rows[i][w]
            b.row(f"pos{i}_{w}", coeffs, GE, 0)
            for v, c in coeffs.items():
                total[v] = total.get(v, ZERO) + c
    b.row("gain", total, GE, 1)
    sol = b.solve()
    if sol.status != "optimal":
        return None
    p = sol.primal()
    strat = tuple(tuple(p[f"h{i}_{k}"] for k in range(len(gens)))
                  for i, gens in enumerate(gens_per_row))
    rows = tuple(_gains_row(gens, strat[i], n) for i, gens in enumerate(gens_per_row))
    exchange = None
    if cone:
        mu = tuple(p[f"mu{k}"] for k in range(nrays))
        nu = tuple(p[f"nu{k}"] for k in range(nlins))
        exchange = ExchangePart(ray_coeffs=mu, lin_coeffs=nu,
                                rows=combination_rows(cone, mu, nu))
    return strat, rows, exchange


# ---------------------------------------------------------------------------
# dual side: martingale polytopes, measure vectors, polar witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MartingalePolytope:
    """Linear description of the martingale measures for one gains basis:
    q >= 0, sum(q) = 1, <q, v> = 0 for each gains generator v."""

    n_atoms: int
    generators: tuple

    def install(self, b: LPBuilder, prefix: str) -> list:
        names = [b.var(f"{prefix}_{w}", lo=0) for w in range(self.n_atoms)]
        b.row(f"{prefix}_mass", {v: Fraction(1) for v in names}, EQ, 1)
        for k, g in enumerate(self.generators):
            coeffs = {names[w]: g.vector[w] for w in range(self.n_atoms) if g.vector[w]}
            b.row(f"{prefix}_mart{k}", coeffs, EQ, 0)
        return names


def martingale_polytope(market: MarketModel, agent: int) -> MartingalePolytope:
    return MartingalePolytope(n_atoms=market.n_atoms,
                              generators=tuple(gains_basis(market, agent)))


def _full_polytope(market: MarketModel) -> MartingalePolytope:
    return MartingalePolytope(n_atoms=market.n_atoms,
                              generators=tuple(full_gains_basis(market)))


def _max_equivalent_member(poly: MartingalePolytope):
    """Canonical interior point: maximize the minimum atom probability."""
    b = LPBuilder(MAX)
    eps = b.var("eps", obj=1)
    names = poly.install(b, "q")
    for w, v in enumerate(names):
        b.row(f"int{w}", {v: Fraction(1), eps: Fraction(-1)}, GE, 0)
    sol = b.solve()
    if sol.status != "optimal" or sol.value <= 0:
        return None
    p = sol.primal()
    return tuple(p[v] for v in names)


def install_emm_system(b: LPBuilder, market: MarketModel, cone: ExchangeCone):
    """Variables and rows for vectors of martingale measures satisfying the
    exchange-cone polarity: <= 0 against rays, = 0 against lineality."""
    names = []
    for i in range(market.n_agents):
        names.append(martingale_polytope(market, i).install(b, f"q{i}"))
    for k, r in enumerate(cone.rays):
        coeffs = {}
        for i in range(market.n_agents):
            for w in range(market.n_atoms):
                if r.rows[i][w]:
                    coeffs[names[i][w]] = coeffs.get(names[i][w], ZERO) + r.rows[i][w]
        b.row(f"polar_ray{k}", coeffs, LE, 0)
    for k, l in enumerate(cone.lineality):
        coeffs = {}
        for i in range(market.n_agents):
            for w in range(market.n_atoms):
                if l.rows[i][w]:
                    coeffs[names[i][w]] = coeffs.get(names[i][w], ZERO) + l.rows[i][w]
        b.row(f"polar_lin{k}", coeffs, EQ, 0)
    return names


def find_emm_vector(market: MarketModel, cone: ExchangeCone) -> Optional[MeasureVector]:
    """Canonical strictly positive element of the compatible-measure
    polytope, or None when no equivalent element exists."""
    b = LPBuilder(MAX)
    eps = b.var("eps", obj=1)
    names = install_emm_system(b, market, cone)
    for i, row in enumerate(names):
        for w, v in enumerate(row):
            b.row(f"int{i}_{w}", {v: Fraction(1), eps: Fraction(-1)}, GE, 0)
    sol = b.solve()
    if sol.status != "optimal" or sol.value <= 0:
        return None
    p = sol.primal()
    return MeasureVector(densities=tuple(tuple(p[v] for v in row) for row in names))


def polar_witness(market: MarketModel, cone: ExchangeCone) -> Optional[PayoffMatrix]:
    """Strictly positive element of the polar of the super-replicable set,
    normalised to unit total mass under the reference probabilities; None
    when only the zero functional is polar-feasible with z > 0 impossible."""
    P = market.space.prob
    N, n = market.n_agents, market.n_atoms
    b = LPBuilder(MAX)
    eps = b.var("eps", obj=1)
    names = [[b.var(f"z{i}_{w}", lo=0) for w in range(n)] for i in range(N)]
    for i in range(N):
        for w in range(n):
            b.row(f"int{i}_{w}", {names[i][w]: Fraction(1), eps: Fraction(-1)}, GE, 0)
    for i in range(N):
        for k, g in enumerate(gains_basis(market, i)):
            coeffs = {names[i][w]: P[w] * g.vector[w] for w in range(n) if g.vector[w]}
            b.row(f"orth{i}_{k}", coeffs, EQ, 0)
    for k, r in enumerate(cone.rays):
        coeffs = {}
        for i in range(N):
            for w in range(n):
                if r.rows[i][w]:
                    coeffs[names[i][w]] = coeffs.get(names[i][w], ZERO) + P[w] * r.rows[i][w]
        b.row(f"polar_ray{k}", coeffs, LE, 0)
    for k, l in enumerate(cone.lineality):
        coeffs = {}
        for i in range(N):
            for w in range(n):
                if l.rows[i][w]:
                    coeffs[names[i][w]] = coeffs.get(names[i][w], ZERO) + P[w] * l.rows[i][w]
        b.row(f"polar_lin{k}", coeffs, EQ, 0)
    b.row("mass", {names[i][w]: P[w] for i in range(N) for w in range(n)}, EQ, 1)
    sol = b.solve()
    if sol.status != "optimal" or sol.value <= 0:
        return None
    p = sol.primal()
    return PayoffMatrix(rows=tuple(tuple(p[v] for v in row) for row in names))


# ---------------------------------------------------------------------------
# detection operations
# ---------------------------------------------------------------------------


def detect_NA_agent(market: MarketModel, agent: int) -> ArbitrageCertificate:
    """Classical single-market arbitrage for one agent, with certificate."""
    gens = gains_basis(market, agent)
    hit = _search_arbitrage(market, [gens], None)
    if hit is not None:
        strat, rows, _ = hit
        return ArbitrageCertificate(found=True, strategy_coeffs=strat, gains_rows=rows)
    member = _max_equivalent_member(martingale_polytope(market, agent))
    if member is None:
        raise InternalInvariantError(
            f"no arbitrage for agent {agent} yet no equivalent martingale measure")
    return ArbitrageCertificate(found=False, dual_witness=(member,))


def detect_NA_global(market: MarketModel) -> ArbitrageCertificate:
    """Classical arbitrage in the pooled market of all assets."""
    gens = full_gains_basis(market)
    hit = _search_arbitrage(market, [gens], None)
    if hit is not None:
        strat, rows, _ = hit
        return ArbitrageCertificate(found=True, strategy_coeffs=strat, gains_rows=rows)
    member = _max_equivalent_member(_full_polytope(market))
    if member is None:
        raise InternalInvariantError(
            "no global arbitrage yet no equivalent martingale measure")
    return ArbitrageCertificate(found=False, dual_witness=(member,))


def detect_NCA(market: MarketModel, cone: ExchangeCone) -> ArbitrageCertificate:
    """Collective arbitrage: per-agent trades plus an exchange from the cone
    making every agent's payoff nonnegative and the total strictly positive."""
    if (cone.n_agents, cone.n_atoms) != (market.n_agents, market.n_atoms):
        raise ValidationError("cone", "cone shape does not match the market")
    gens_per_agent = [gains_basis(market, i) for i in range(market.n_agents)]
    hit = _search_arbitrage(market, gens_per_agent, cone)
    if hit is not None:
        strat, rows, exchange = hit
        return ArbitrageCertificate(found=True, strategy_coeffs=strat,
                                    gains_rows=rows, exchange=exchange)
    z = polar_witness(market, cone)
    if z is None:
        raise InternalInvariantError(
            "no collective arbitrage yet no strictly positive polar element")
    return ArbitrageCertificate(found=False, dual_witness=z.rows)


# ---------------------------------------------------------------------------
# polytope probes
# ---------------------------------------------------------------------------


def emm_coordinate_range(market: MarketModel, cone: ExchangeCone, agent: int,
                         atom: int):
    """Exact (min, max) of one atom probability over the compatible-measure
    polytope; None when the polytope is empty."""
    out = []
    for sense in (MIN, MAX):
        b = LPBuilder(sense)
        names = install_emm_system(b, market, cone)
        b.add_objective(names[agent][atom], 1)
        sol = b.solve()
        if sol.status != "optimal":
            return None
        out.append(sol.value)
    return tuple(out)


def emm_is_singleton(market: MarketModel, cone: ExchangeCone) -> Optional[MeasureVector]:
    """The unique compatible measure vector, if the polytope is a single
    point; None otherwise (empty or multi-point)."""
    rows = []
    for i in range(market.n_agents):
        row = []
        for w in range(market.n_atoms):
            rng = emm_coordinate_range(market, cone, i, w)
            if rng is None or rng[0] != rng[1]:
                return None
            row.append(rng[0])
        rows.append(tuple(row))
    return MeasureVector(densities=tuple(rows))
