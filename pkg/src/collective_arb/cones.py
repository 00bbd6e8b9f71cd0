"""Exchange cones: finitely generated cones of inter-agent transfers.

A cone is held as conic ray generators plus a basis of its lineality space,
each generator an N-row payoff matrix.  Structural flags (zero-sum,
containment of all deterministic zero-sum transfers, measurability date)
are verified from the generators -- never trusted from the caller -- so
user-supplied spans get correct metadata.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ValidationError
from .lp import EQ, LPBuilder, MIN, ZERO
from .market import (MarketModel, PayoffMatrix, agents_join_partition,
                     constant_on, payoff_matrix)


@dataclass(frozen=True)
class ConeFlags:
    is_zero_sum: bool
    contains_RN0: bool
    measurable_at: Optional[int]


@dataclass(frozen=True)
class ExchangeCone:
    n_agents: int
    n_atoms: int
    rays: tuple
    lineality: tuple
    meta: ConeFlags

    @property
    def generators(self):
        return self.rays + self.lineality

    def is_trivial(self) -> bool:
        return not self.rays and not self.lineality


@dataclass(frozen=True)
class Membership:
    contains: bool
    ray_coeffs: Optional[tuple] = None
    lin_coeffs: Optional[tuple] = None
    separator: Optional[tuple] = None  # N rows; <=0 on rays, =0 on lineality, >0 on y


def cone_contains(cone: ExchangeCone, y: PayoffMatrix) -> Membership:
    """Exact membership test with certificate.

    On success returns nonnegative ray coefficients and free lineality
    coefficients reproducing ``y``; on failure a separating functional."""
    if y.n_agents != cone.n_agents or len(y.rows[0]) != cone.n_atoms:
        raise ValidationError("membership", "shape mismatch between cone and payoff")
    b = LPBuilder(MIN)
    for k in range(len(cone.rays)):
        b.var(f"mu{k}", lo=0)
    for k in range(len(cone.lineality)):
        b.var(f"nu{k}")
    for i in range(cone.n_agents):
        for w in range(cone.n_atoms):
            coeffs = {}
            for k, r in enumerate(cone.rays):
                if r.rows[i][w]:
                    coeffs[f"mu{k}"] = r.rows[i][w]
            for k, l in enumerate(cone.lineality):
                if l.rows[i][w]:
                    coeffs[f"nu{k}"] = l.rows[i][w]
            b.row(f"c{i}_{w}", coeffs, EQ, y.rows[i][w])
    sol = b.solve()
    if sol.status == "optimal":
        p = sol.primal()
        return Membership(
            contains=True,
            ray_coeffs=tuple(p[f"mu{k}"] for k in range(len(cone.rays))),
            lin_coeffs=tuple(p[f"nu{k}"] for k in range(len(cone.lineality))),
        )
    assert sol.status == "infeasible"
    w = sol.outcome.farkas_rows
    n = cone.n_atoms
    sep = tuple(tuple(w[i * n + a] for a in range(n)) for i in range(cone.n_agents))
    return Membership(contains=False, separator=sep)


def combination_rows(cone: ExchangeCone, ray_coeffs, lin_coeffs) -> tuple:
    """Payoff rows of  sum mu_k * ray_k + sum nu_k * lin_k."""
    n, N = cone.n_atoms, cone.n_agents
    rows = [[ZERO] * n for _ in range(N)]
    for c, g in zip(ray_coeffs, cone.rays):
        if c:
            for i in range(N):
                for w in range(n):
                    rows[i][w] += c * g.rows[i][w]
    for c, g in zip(lin_coeffs, cone.lineality):
        if c:
            for i in range(N):
                for w in range(n):
                    rows[i][w] += c * g.rows[i][w]
    return tuple(tuple(r) for r in rows)


# ---------------------------------------------------------------------------
# flag verification
# ---------------------------------------------------------------------------


def _unit_transfer(market: MarketModel, i: int, j: int) -> PayoffMatrix:
    rows = [[ZERO] * market.n_atoms for _ in range(market.n_agents)]
    for w in range(market.n_atoms):
        rows[i][w] = Fraction(1)
        rows[j][w] = Fraction(-1)
    return PayoffMatrix(rows=tuple(tuple(r) for r in rows))


def _verify_flags(market: MarketModel, rays, lineality) -> ConeFlags:
    gens = tuple(rays) + tuple(lineality)
    zero_sum = all(all(s == 0 for s in g.column_sums()) for g in gens)

    probe = ExchangeCone(n_agents=market.n_agents, n_atoms=market.n_atoms,
                         rays=tuple(rays), lineality=tuple(lineality),
                         meta=ConeFlags(False, False, None))
    contains_rn0 = True
    for i in range(market.n_agents):
        for j in range(market.n_agents):
            if i != j and not cone_contains(probe, _unit_transfer(market, i, j)).contains:
                contains_rn0 = False
                break
        if not contains_rn0:
            break

    measurable_at = None
    for t in range(market.T + 1):
        part = agents_join_partition(market, t)
        if all(constant_on(row, part) for g in gens for row in g.rows):
            measurable_at = t
            break
    return ConeFlags(is_zero_sum=zero_sum, contains_RN0=contains_rn0,
                     measurable_at=measurable_at)


def _make(market: MarketModel, rays, lineality) -> ExchangeCone:
    return ExchangeCone(n_agents=market.n_agents, n_atoms=market.n_atoms,
                        rays=tuple(rays), lineality=tuple(lineality),
                        meta=_verify_flags(market, rays, lineality))


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def make_zero(market: MarketModel) -> ExchangeCone:
    """The cone {0}: cooperation disabled."""
    return _make(market, (), ())


def make_Y0(market: MarketModel, t: int) -> ExchangeCone:
    """All zero-sum transfers settled on time-t information: for every block
    B of the agents' joint time-t partition and every adjacent agent pair,
    the transfer 1_B * (e_i - e_{i+1})."""
    if not 0 <= t <= market.T:
        raise ValidationError("t", f"time {t} outside 0..{market.T}")
    lineality = []
    part = agents_join_partition(market, t)
    for i in range(market.n_agents - 1):
        for block in part:
            rows = [[ZERO] * market.n_atoms for _ in range(market.n_agents)]
            for w in block:
                rows[i][w] = Fraction(1)
                rows[i + 1][w] = Fraction(-1)
            lineality.append(payoff_matrix(market, rows, where=f"Y0(t={t})"))
    return _make(market, (), lineality)


def make_grouping(market: MarketModel, groups: Sequence[Sequence[int]],
                  t: int) -> ExchangeCone:
    """Zero-sum within each agent group, settled on time-t information.
    The one-group partition reproduces make_Y0."""
    flat = sorted(i for g in groups for i in g)
    if flat != list(range(market.n_agents)):
        raise ValidationError("groups", "groups must partition the agent set")
    if not 0 <= t <= market.T:
        raise ValidationError("t", f"time {t} outside 0..{market.T}")
    part = agents_join_partition(market, t)
    lineality = []
    for g in groups:
        members = sorted(g)
        for i, j in zip(members, members[1:]):
            for block in part:
                rows = [[ZERO] * market.n_atoms for _ in range(market.n_agents)]
                for w in block:
                    rows[i][w] = Fraction(1)
                    rows[j][w] = Fraction(-1)
                lineality.append(payoff_matrix(market, rows, where="grouping"))
    return _make(market, (), lineality)


def make_span(market: MarketModel, generators) -> ExchangeCone:
    """The vector space spanned by the given payoff matrices."""
    lineality = []
    for k, g in enumerate(generators):
        if isinstance(g, PayoffMatrix):
            lineality.append(payoff_matrix(market, g.rows, where=f"span[{k}]"))
        else:
            lineality.append(payoff_matrix(market, g, where=f"span[{k}]"))
    return _make(market, (), lineality)


def make_rays(market: MarketModel, generators) -> ExchangeCone:
    """The conic hull (nonnegative combinations) of the given matrices."""
    rays = [payoff_matrix(market, getattr(g, "rows", g), where=f"ray[{k}]")
            for k, g in enumerate(generators)]
    return _make(market, rays, ())


def cone_add(market: MarketModel, a: ExchangeCone, b: ExchangeCone) -> ExchangeCone:
    """Minkowski sum: concatenated generators, flags recomputed."""
    if (a.n_agents, a.n_atoms) != (b.n_agents, b.n_atoms):
        raise ValidationError("cone_add", "cones have different shapes")
    return _make(market, a.rays + b.rays, a.lineality + b.lineality)


def spans_equal(a: ExchangeCone, b: ExchangeCone) -> bool:
    """Mutual containment of generators (for lineality generators both
    signs are required)."""

    def negate(g: PayoffMatrix) -> PayoffMatrix:
        return PayoffMatrix(rows=tuple(tuple(-v for v in r) for r in g.rows))

    def contained(x: ExchangeCone, y: ExchangeCone) -> bool:
        for g in x.rays:
            if not cone_contains(y, g).contains:
                return False
        for g in x.lineality:
            if not cone_contains(y, g).contains:
                return False
            if not cone_contains(y, negate(g)).contains:
                return False
        return True

    return contained(a, b) and contained(b, a)
