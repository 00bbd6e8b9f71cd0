"""Exact rational linear programming with verifiable certificates.

Solves min/max problems over rational data with a two-phase primal simplex
using Bland's rule (termination under the heavy degeneracy typical of tree
markets).  Every outcome carries an exact certificate:

* ``Optimal``    -- primal point plus row duals; complementary slackness and
                    sign conditions re-verify with plain arithmetic.
* ``Infeasible`` -- Farkas multipliers over rows and finite bounds combining
                    the constraints into an impossible ``0 > 0`` inequality.
* ``Unbounded``  -- a feasible point plus an improving feasible ray.

All arithmetic is `fractions.Fraction`; there are no tolerances anywhere.
Results are deterministic: identical programs yield identical outcomes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Union

LE = "<="
EQ = "=="
GE = ">="
_RELS = (LE, EQ, GE)

MIN = "min"
MAX = "max"

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce ints, strings like '5/6' and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


@dataclass(frozen=True)
class LinearProgram:
    """min/max objective.x subject to rows and per-variable bounds.

    Rows are (coefficients, relation, rhs); bounds are (lower, upper) with
    ``None`` meaning unbounded on that side.  All rows must have the same
    length as the objective.
    """

    sense: str
    objective: tuple
    row_coeffs: tuple
    row_rels: tuple
    row_rhs: tuple
    lower: tuple
    upper: tuple
    var_names: tuple = ()
    row_names: tuple = ()

    def __post_init__(self):
        n = len(self.objective)
        if self.sense not in (MIN, MAX):
            raise ValueError(f"bad sense {self.sense!r}")
        for coeffs in self.row_coeffs:
            if len(coeffs) != n:
                raise ValueError("row length differs from objective length")
        for rel in self.row_rels:
            if rel not in _RELS:
                raise ValueError(f"bad relation {rel!r}")
        if not (len(self.row_coeffs) == len(self.row_rels) == len(self.row_rhs)):
            raise ValueError("inconsistent row data")
        if not (len(self.lower) == len(self.upper) == n):
            raise ValueError("bounds length differs from variable count")

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    @property
    def n_rows(self) -> int:
        return len(self.row_coeffs)

    def to_text(self) -> str:
        """Plain-text listing of the program, for --dump-lp inspection."""
        names = self.var_names or tuple(f"x{i}" for i in range(self.n_vars))
        rnames = self.row_names or tuple(f"r{j}" for j in range(self.n_rows))

        def lin(coeffs):
            terms = [f"{c} {names[i]}" for i, c in enumerate(coeffs) if c != 0]
            return " + ".join(terms).replace("+ -", "- ") if terms else "0"

        out = [f"{self.sense}: {lin(self.objective)}", "subject to:"]
        for j, coeffs in enumerate(self.row_coeffs):
            out.append(f"  {rnames[j]}: {lin(coeffs)} {self.row_rels[j]} {self.row_rhs[j]}")
        out.append("bounds:")
        for i in range(self.n_vars):
            lo, up = self.lower[i], self.upper[i]
            if lo is None and up is None:
                out.append(f"  {names[i]} free")
            elif up is None:
                out.append(f"  {names[i]} >= {lo}")
            elif lo is None:
                out.append(f"  {names[i]} <= {up}")
            else:
                out.append(f"  {lo} <= {names[i]} <= {up}")
        return "\n".join(out)


@dataclass(frozen=True)
class Optimal:
    """value in the original sense; duals follow the minimisation convention
    (>= rows have nonnegative duals, <= rows nonpositive, == rows free)."""

    value: Fraction
    point: tuple
    row_duals: tuple

    status = "optimal"


@dataclass(frozen=True)
class Infeasible:
    """Farkas certificate: with w over rows (w>=0 on >= rows, w<=0 on <= rows)
    and zlo>=0 / zup<=0 over finite lower/upper bounds,
    sum_j w_j a_j + zlo + zup = 0 while w.b + zlo.lower + zup.upper > 0."""

    farkas_rows: tuple
    farkas_lower: tuple
    farkas_upper: tuple

    status = "infeasible"


@dataclass(frozen=True)
class Unbounded:
    """A feasible point and a feasible direction strictly improving the
    objective in the original sense."""

    point: tuple
    ray: tuple

    status = "unbounded"


LPOutcome = Union[Optimal, Infeasible, Unbounded]


# ---------------------------------------------------------------------------
# simplex over the standard form  min c.x  s.t.  A x = b, x >= 0, b >= 0
# ---------------------------------------------------------------------------


class _Tableau:
    """Dense tableau with one artificial variable per row.

    Artificial columns double as a running copy of the basis inverse, which
    is what makes exact duals and Farkas vectors cheap to read off.
    """

    def __init__(self, A, b, ncols):
        self.m = len(A)
        self.n = ncols
        self.rows = [list(A[r]) + [ONE if i == r else ZERO for i in range(self.m)] + [b[r]]
                     for r in range(self.m)]
        self.basis = [self.n + r for r in range(self.m)]
        self.orig_index = list(range(self.m))  # tableau row -> input row
        self.zrow = None

    def set_costs(self, costs):
        # costs over the n + m columns; rebuild reduced costs from scratch
        width = self.n + self.m + 1
        z = [costs[j] if j < self.n + self.m else ZERO for j in range(width - 1)] + [ZERO]
        for r, row in enumerate(self.rows):
            cb = costs[self.basis[r]]
            if cb:
                for j in range(width):
                    z[j] -= cb * row[j]
        self.zrow = z

    def pivot(self, r, j):
        prow = self.rows[r]
        piv = prow[j]
        if piv != ONE:
            inv = ONE / piv
            for k, v in enumerate(prow):
                if v:
                    prow[k] = v * inv
        nz = [k for k, v in enumerate(prow) if v]
        for rr, other in enumerate(self.rows):
            if rr == r:
                continue
            f = other[j]
            if f:
                for k in nz:
                    other[k] -= f * prow[k]
        f = self.zrow[j]
        if f:
            z = self.zrow
            for k in nz:
                z[k] -= f * prow[k]
        self.basis[r] = j

    def run(self, enterable):
        """Bland's rule; returns 'optimal' or ('unbounded', entering col)."""
        while True:
            z = self.zrow
            enter = -1
            for j in range(self.n + self.m):
                if z[j] < 0 and enterable(j):
                    enter = j
                    break
            if enter < 0:
                return "optimal", -1
            leave, best = -1, None
            for r, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    if best is None or ratio < best or (
                            ratio == best and self.basis[r] < self.basis[leave]):
                        leave, best = r, ratio
            if leave < 0:
                return "unbounded", enter
            self.pivot(leave, enter)

    def value(self):
        return -self.zrow[-1]

    def duals(self, costs):
        # y_r = cost of artificial r minus its reduced cost, per live row
        y = {}
        for orig in self.orig_index:
            col = self.n + orig
            y[orig] = costs[col] - self.zrow[col]
        return y

    def point(self):
        x = [ZERO] * (self.n + self.m)
        for r, bj in enumerate(self.basis):
            x[bj] = self.rows[r][-1]
        return x

    def drop_row(self, r):
        del self.rows[r]
        del self.basis[r]
        del self.orig_index[r]


def _solve_standard(A, b, c, n):
    """min c.x s.t. Ax=b (b>=0), x>=0 over n columns.  Returns a dict with
    'status' and per-status data: point/duals/value, farkas duals, or ray."""
    m = len(A)
    tab = _Tableau(A, b, n)

    phase1 = [ZERO] * n + [ONE] * m
    tab.set_costs(phase1)
    status, _ = tab.run(lambda j: j < n)
    assert status == "optimal"
    if tab.value() != 0:
        y = tab.duals(phase1)
        return {"status": "infeasible", "farkas": [y.get(r, ZERO) for r in range(m)]}

    # drive artificials out of the basis; drop redundant rows
    r = 0
    while r < len(tab.rows):
        if tab.basis[r] >= n:
            assert tab.rows[r][-1] == 0
            for j in range(n):
                if tab.rows[r][j] != 0:
                    tab.pivot(r, j)
                    break
            else:
                tab.drop_row(r)
                continue
        r += 1

    phase2 = list(c) + [ZERO] * m
    tab.set_costs(phase2)
    status, enter = tab.run(lambda j: j < n)
    if status == "unbounded":
        ray = [ZERO] * n
        ray[enter] = ONE
        for r, bj in enumerate(tab.basis):
            if bj < n:
                ray[bj] = -tab.rows[r][enter]
        point = tab.point()[:n]
        return {"status": "unbounded", "point": point, "ray": ray}

    y = tab.duals(phase2)
    return {
        "status": "optimal",
        "point": tab.point()[:n],
        "duals": [y.get(r, ZERO) for r in range(m)],
        "value": tab.value(),
    }


# ---------------------------------------------------------------------------
# compilation of the general form to the standard form and back
# ---------------------------------------------------------------------------

_FREE, _LO, _UP, _RANGE = "free", "lo", "up", "range"


_dump_sink: Optional[list] = None
_audit = False


def set_dump_sink(sink) -> None:
    """Collect a text listing of every program solved (CLI --dump-lp)."""
    global _dump_sink
    _dump_sink = sink


def set_audit(enabled: bool) -> None:
    """Test mode: re-verify the certificate of every solve before returning."""
    global _audit
    _audit = enabled


def solve(lp: LinearProgram) -> LPOutcome:
    """Solve an exact-rational program; see module docstring for contracts."""
    if _dump_sink is not None:
        _dump_sink.append(lp.to_text())
    outcome = _solve_general(lp)
    if _audit:
        from .verify import check_lp_outcome

        check_lp_outcome(lp, outcome)
    return outcome


def _solve_general(lp: LinearProgram) -> LPOutcome:
    n = lp.n_vars
    minimise = lp.sense == MIN
    c = [frac(v) if minimise else -frac(v) for v in lp.objective]

    # variable substitutions onto nonnegative standard variables
    patterns = []    # (kind, std main col, shift)
    std_cols = 0
    range_vars = []
    for i in range(n):
        lo, up = lp.lower[i], lp.upper[i]
        if lo is None and up is None:
            patterns.append((_FREE, std_cols, ZERO))
            std_cols += 2
        elif lo is not None and up is None:
            patterns.append((_LO, std_cols, frac(lo)))
            std_cols += 1
        elif lo is None:
            patterns.append((_UP, std_cols, frac(up)))
            std_cols += 1
        else:
            patterns.append((_RANGE, std_cols, frac(lo)))
            range_vars.append(i)
            std_cols += 1

    def substitute(coeffs):
        """original-row coefficients -> (std coefficient list, rhs shift)."""
        out = [ZERO] * std_cols
        shift = ZERO
        for i, a in enumerate(coeffs):
            a = frac(a)
            if not a:
                continue
            kind, j, s = patterns[i]
            if kind == _FREE:
                out[j] += a
                out[j + 1] -= a
            elif kind in (_LO, _RANGE):
                out[j] += a
                shift += a * s
            else:  # _UP: x = up - s
                out[j] -= a
                shift += a * s
        return out, shift

    # standard rows: the original rows first, then one range row per
    # two-sided variable (s_i <= up - lo); slacks appended per row.
    std_rows = []       # (dense coeffs incl slack, rhs, sigma, tag)
    slack_cols = {}
    total_cols = std_cols
    build = []
    for j in range(lp.n_rows):
        coeffs, shift = substitute(lp.row_coeffs[j])
        rhs = frac(lp.row_rhs[j]) - shift
        build.append((coeffs, lp.row_rels[j], rhs, ("row", j)))
    for i in range(n):
        if patterns[i][0] == _RANGE:
            coeffs = [ZERO] * std_cols
            coeffs[patterns[i][1]] = ONE
            rhs = frac(lp.upper[i]) - frac(lp.lower[i])
            build.append((coeffs, LE, rhs, ("range", i)))

    for coeffs, rel, rhs, tag in build:
        if rel != EQ:
            slack_cols[len(std_rows)] = total_cols
            coeffs = coeffs + [ZERO] * (total_cols - len(coeffs))
            coeffs.append(ONE if rel == LE else -ONE)
            total_cols += 1
        sigma = ONE
        if rhs < 0:
            sigma = -ONE
            coeffs = [-v for v in coeffs]
            rhs = -rhs
        std_rows.append((coeffs, rhs, sigma, tag))

    A = [coeffs + [ZERO] * (total_cols - len(coeffs)) for coeffs, _, _, _ in std_rows]
    b = [rhs for _, rhs, _, _ in std_rows]

    c_std = [ZERO] * total_cols
    offset = ZERO
    for i in range(n):
        kind, j, s = patterns[i]
        ci = c[i]
        if kind == _FREE:
            c_std[j] += ci
            c_std[j + 1] -= ci
        elif kind in (_LO, _RANGE):
            c_std[j] += ci
            offset += ci * s
        else:
            c_std[j] -= ci
            offset += ci * s

    res = _solve_standard(A, b, c_std, total_cols)

    def map_point(xs):
        out = []
        for i in range(n):
            kind, j, s = patterns[i]
            if kind == _FREE:
                out.append(xs[j] - xs[j + 1])
            elif kind in (_LO, _RANGE):
                out.append(s + xs[j])
            else:
                out.append(s - xs[j])
        return tuple(out)

    def map_direction(xs):
        out = []
        for i in range(n):
            kind, j, _ = patterns[i]
            if kind == _FREE:
                out.append(xs[j] - xs[j + 1])
            elif kind in (_LO, _RANGE):
                out.append(xs[j])
            else:
                out.append(-xs[j])
        return tuple(out)

    if res["status"] == "unbounded":
        return Unbounded(point=map_point(res["point"]), ray=map_direction(res["ray"]))

    if res["status"] == "optimal":
        row_duals = [ZERO] * lp.n_rows
        for k, (_, _, sigma, tag) in enumerate(std_rows):
            if tag[0] == "row":
                row_duals[tag[1]] = sigma * res["duals"][k]
        value = res["value"] + offset
        return Optimal(
            value=value if minimise else -value,
            point=map_point(res["point"]),
            row_duals=tuple(row_duals),
        )

    # infeasible: fold the standard-form Farkas vector back onto the
    # original rows and finite bounds
    yhat = res["farkas"]
    w = [ZERO] * lp.n_rows
    range_dual = {}
    for k, (_, _, sigma, tag) in enumerate(std_rows):
        if tag[0] == "row":
            w[tag[1]] = sigma * yhat[k]
        else:
            range_dual[tag[1]] = sigma * yhat[k]
    zlo = [ZERO] * n
    zup = [ZERO] * n
    for i in range(n):
        kind, _, _ = patterns[i]
        tau = ZERO
        for j in range(lp.n_rows):
            a = lp.row_coeffs[j][i]
            if a and w[j]:
                tau += w[j] * frac(a)
        if kind == _FREE:
            assert tau == 0
        elif kind == _LO:
            zlo[i] = -tau
            assert zlo[i] >= 0
        elif kind == _UP:
            zup[i] = -tau
            assert zup[i] <= 0
        else:
            zup[i] = range_dual.get(i, ZERO)
            assert zup[i] <= 0
            zlo[i] = -tau - zup[i]
            assert zlo[i] >= 0
    return Infeasible(farkas_rows=tuple(w), farkas_lower=tuple(zlo), farkas_upper=tuple(zup))


# ---------------------------------------------------------------------------
# small builder with named variables/rows, used by every formulation module
# ---------------------------------------------------------------------------


class LPBuilder:
    """Assemble a LinearProgram with named variables and rows."""

    def __init__(self, sense: str = MIN):
        self.sense = sense
        self._vars: dict = {}
        self._obj: dict = {}
        self._rows: list = []

    def var(self, name: str, lo=None, up=None, obj=ZERO) -> str:
        if name in self._vars:
            raise ValueError(f"duplicate variable {name!r}")
        self._vars[name] = (None if lo is None else frac(lo),
                            None if up is None else frac(up))
        if obj:
            self._obj[name] = self._obj.get(name, ZERO) + frac(obj)
        return name

    def add_objective(self, name: str, coeff) -> None:
        if name not in self._vars:
            raise ValueError(f"unknown variable {name!r}")
        self._obj[name] = self._obj.get(name, ZERO) + frac(coeff)

    def row(self, name: str, coeffs: Mapping[str, Fraction], rel: str, rhs) -> None:
        for v in coeffs:
            if v not in self._vars:
                raise ValueError(f"unknown variable {v!r} in row {name!r}")
        self._rows.append((name, dict(coeffs), rel, frac(rhs)))

    def build(self) -> LinearProgram:
        names = tuple(self._vars)
        index = {v: i for i, v in enumerate(names)}
        objective = tuple(self._obj.get(v, ZERO) for v in names)
        coeffs, rels, rhs, rnames = [], [], [], []
        for rname, cmap, rel, b in self._rows:
            dense = [ZERO] * len(names)
            for v, a in cmap.items():
                dense[index[v]] += frac(a)
            coeffs.append(tuple(dense))
            rels.append(rel)
            rhs.append(b)
            rnames.append(rname)
        lower = tuple(self._vars[v][0] for v in names)
        upper = tuple(self._vars[v][1] for v in names)
        return LinearProgram(
            sense=self.sense, objective=objective,
            row_coeffs=tuple(coeffs), row_rels=tuple(rels), row_rhs=tuple(rhs),
            lower=lower, upper=upper, var_names=names, row_names=tuple(rnames),
        )

    def solve(self) -> "Solution":
        lp = self.build()
        return Solution(lp, solve(lp))


class Solution:
    """Name-indexed view over an LPOutcome."""

    def __init__(self, lp: LinearProgram, outcome: LPOutcome):
        self.lp = lp
        self.outcome = outcome
        self.status = outcome.status

    @property
    def value(self) -> Fraction:
        return self.outcome.value

    def primal(self) -> dict:
        return dict(zip(self.lp.var_names, self.outcome.point))

    def dual(self, row_name: str) -> Fraction:
        return self.outcome.row_duals[self.lp.row_names.index(row_name)]

    def ray(self) -> dict:
        return dict(zip(self.lp.var_names, self.outcome.ray))
