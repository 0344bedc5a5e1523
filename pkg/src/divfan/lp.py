"""Exact rational linear programming.

Two independent paths: a two-phase tableau simplex with Bland's rule, and
Fourier-Motzkin elimination used as a feasibility oracle.  Variables are
free; constraints are ``a.x >= b`` or ``a.x = b``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .errors import DivfanError, SizeBudgetExceeded

MAX_VARIABLES = 200
MAX_CONSTRAINTS = 2000
FM_MAX_VARIABLES = 12
FM_MAX_ROWS = 200_000

GE, EQ, LE = ">=", "=", "<="


class LinearProgram:
    """maximize objective.x subject to rows (coeffs, relation, rhs)."""

    def __init__(self, variables, constraints=(), objective=None):
        self.variables = list(variables)
        self.constraints = []
        for row in constraints:
            self.add(*row)
        self.objective = None
        if objective is not None:
            self.set_objective(objective)

    @property
    def n(self):
        return len(self.variables)

    def index(self, name):
        return self.variables.index(name)

    def _vector(self, coeffs):
        if isinstance(coeffs, dict):
            v = [Fraction(0)] * self.n
            for k, c in coeffs.items():
                v[self.index(k) if not isinstance(k, int) else k] += Fraction(c)
            return v
        v = [Fraction(c) for c in coeffs]
        if len(v) != self.n:
            raise ValueError(f"row has {len(v)} coefficients for {self.n} variables")
        return v

    def add(self, coeffs, relation, rhs):
        v = self._vector(coeffs)
        rhs = Fraction(rhs)
        if relation == LE:
            v, rhs, relation = [-c for c in v], -rhs, GE
        if relation not in (GE, EQ):
            raise ValueError(f"unknown relation {relation!r}")
        self.constraints.append((v, relation, rhs))

    def set_objective(self, coeffs):
        self.objective = self._vector(coeffs)

    def satisfied_by(self, x):
        for a, rel, b in self.constraints:
            s = sum(c * v for c, v in zip(a, x))
            if (rel == GE and s < b) or (rel == EQ and s != b):
                return False
        return True

    def to_json(self):
        return {
            "variables": list(self.variables),
            "constraints": [{"coeffs": [str(c) for c in a], "relation": rel, "rhs": str(b)}
                            for a, rel, b in self.constraints],
            "objective": None if self.objective is None else [str(c) for c in self.objective],
        }


@dataclass
class LPResult:
    status: str  # "optimal", "unbounded" or "infeasible"
    assignment: list = None
    objective_value: Fraction = None
    farkas: list = None
    pivots: int = 0
    details: dict = field(default_factory=dict)

    @property
    def feasible(self):
        return self.status != "infeasible"

    def value(self, lp, name):
        return self.assignment[lp.index(name)]


class _Tableau:
    """Dense tableau: rows [A | b], a basis, and a reduced cost row."""

    def __init__(self, rows, basis, ncols):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols
        self.cost = None
        self.value = Fraction(0)
        self.pivots = 0

    def set_cost(self, c):
        self.cost = list(c)
        self.value = Fraction(0)
        for i, bv in enumerate(self.basis):
            cb = c[bv]
            if cb:
                row = self.rows[i]
                for j in range(self.ncols):
                    if row[j]:
                        self.cost[j] -= cb * row[j]
                self.value += cb * row[-1]

    def pivot(self, r, e):
        row = self.rows[r]
        p = row[e]
        if p != 1:
            row = [x / p for x in row]
            self.rows[r] = row
        nz = [j for j, x in enumerate(row) if x]
        for i, other in enumerate(self.rows):
            if i != r:
                f = other[e]
                if f:
                    for j in nz:
                        other[j] -= f * row[j]
        f = self.cost[e]
        if f:
            for j in nz:
                if j < self.ncols:
                    self.cost[j] -= f * row[j]
            self.value += f * row[-1]
        self.basis[r] = e
        self.pivots += 1

    def run(self, allowed):
        """Maximise with Bland's rule; returns "optimal" or "unbounded"."""
        while True:
            e = next((j for j in range(self.ncols) if allowed[j] and self.cost[j] > 0), None)
            if e is None:
                return "optimal"
            best = None
            for i, row in enumerate(self.rows):
                a = row[e]
                if a > 0:
                    ratio = row[-1] / a
                    if (best is None or ratio < best[0]
                            or (ratio == best[0] and self.basis[i] < self.basis[best[1]])):
                        best = (ratio, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], e)


def _check_budget(lp):
    if lp.n > MAX_VARIABLES:
        raise SizeBudgetExceeded(f"{lp.n} variables exceed the budget of {MAX_VARIABLES}")
    if len(lp.constraints) > MAX_CONSTRAINTS:
        raise SizeBudgetExceeded(
            f"{len(lp.constraints)} constraints exceed the budget of {MAX_CONSTRAINTS}")


def solve(lp, certify=True):
    """Exact two-phase simplex.  Returned points and Farkas rays are re-checked."""
    _check_budget(lp)
    n = lp.n
    m = len(lp.constraints)
    nslack = sum(1 for _, rel, _ in lp.constraints if rel == GE)
    # columns: x+ (n), x- (n), slacks, artificials (m)
    ncols = 2 * n + nslack + m
    art0 = 2 * n + nslack
    rows = []
    s = 0
    for i, (a, rel, b) in enumerate(lp.constraints):
        row = [Fraction(0)] * (ncols + 1)
        for j, c in enumerate(a):
            row[j] = c
            row[n + j] = -c
        if rel == GE:
            row[2 * n + s] = Fraction(-1)
            s += 1
        row[-1] = b
        if b < 0:
            row = [-x for x in row]
        row[art0 + i] = Fraction(1)
        rows.append(row)
    tab = _Tableau(rows, [art0 + i for i in range(m)], ncols)
    tab.set_cost([Fraction(0)] * art0 + [Fraction(-1)] * m)
    tab.run([True] * ncols)
    if tab.value < 0:
        farkas = farkas_certificate(lp) if certify else None
        return LPResult("infeasible", farkas=farkas, pivots=tab.pivots)
    # drive artificials out of the basis, dropping redundant rows
    r = 0
    while r < len(tab.rows):
        if tab.basis[r] >= art0:
            e = next((j for j in range(art0) if tab.rows[r][j] != 0), None)
            if e is None:
                del tab.rows[r]
                del tab.basis[r]
                continue
            tab.pivot(r, e)
        r += 1
    allowed = [j < art0 for j in range(ncols)]
    obj = lp.objective or [Fraction(0)] * n
    tab.set_cost(list(obj) + [-c for c in obj] + [Fraction(0)] * (ncols - 2 * n))
    status = tab.run(allowed)
    x = [Fraction(0)] * ncols
    for i, bv in enumerate(tab.basis):
        x[bv] = tab.rows[i][-1]
    point = [x[j] - x[n + j] for j in range(n)]
    if not lp.satisfied_by(point):
        raise DivfanError("simplex produced a point violating the program")
    value = sum(c * v for c, v in zip(obj, point))
    return LPResult(status, point, value if status == "optimal" else None, pivots=tab.pivots)


def farkas_certificate(lp):
    """y with y >= 0 on inequality rows, sum y_i a_i = 0 and sum y_i b_i = 1."""
    m = len(lp.constraints)
    alt = LinearProgram([f"y{i}" for i in range(m)])
    for j in range(lp.n):
        alt.add([a[j] for a, _, _ in lp.constraints], EQ, 0)
    alt.add([b for _, _, b in lp.constraints], EQ, 1)
    for i, (_, rel, _) in enumerate(lp.constraints):
        if rel == GE:
            alt.add({i: 1}, GE, 0)
    res = solve(alt, certify=False)
    if res.status == "infeasible":
        raise DivfanError("phase one reported infeasibility but no Farkas ray exists")
    y = res.assignment
    if not check_farkas(lp, y):
        raise DivfanError("Farkas ray failed exact verification")
    return y


def check_farkas(lp, y):
    if len(y) != len(lp.constraints):
        return False
    for yi, (_, rel, _) in zip(y, lp.constraints):
        if rel == GE and yi < 0:
            return False
    for j in range(lp.n):
        if sum(yi * a[j] for yi, (a, _, _) in zip(y, lp.constraints)) != 0:
            return False
    return sum(yi * b for yi, (_, _, b) in zip(y, lp.constraints)) > 0


# ---------------------------------------------------------------------------
# Fourier-Motzkin


def _normalize(a, b):
    den = lcm(*(c.denominator for c in a), b.denominator)
    ints = [int(c * den) for c in a]
    bi = b * den
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g == 0:
        return tuple(ints), bi
    return tuple(c // g for c in ints), bi / g


def fm_eliminate(lp):
    """Feasibility of the constraint system by exact elimination."""
    n = lp.n
    if n > FM_MAX_VARIABLES:
        raise SizeBudgetExceeded(f"{n} variables exceed the elimination budget of {FM_MAX_VARIABLES}")
    ineqs = [(list(a), b) for a, rel, b in lp.constraints if rel == GE]
    eqs = [(list(a), b) for a, rel, b in lp.constraints if rel == EQ]
    # substitute equalities away
    while eqs:
        a, b = eqs.pop()
        j = next((k for k, c in enumerate(a) if c), None)
        if j is None:
            if b != 0:
                return False
            continue
        piv = a[j]

        def sub(row, rhs):
            f = row[j] / piv
            if not f:
                return row, rhs
            return [x - f * y for x, y in zip(row, a)], rhs - f * b
        eqs = [sub(r, c) for r, c in eqs]
        ineqs = [sub(r, c) for r, c in ineqs]
    rows = {}
    for a, b in ineqs:
        _add_row(rows, a, b)
    remaining = set(range(n))
    while remaining:
        counts = {}
        for j in remaining:
            pos = sum(1 for a in rows if a[j] > 0)
            neg = sum(1 for a in rows if a[j] < 0)
            counts[j] = (pos * neg - pos - neg, j)
        j = min(counts.values())[1]
        remaining.discard(j)
        pos = [(a, b) for a, b in rows.items() if a[j] > 0]
        neg = [(a, b) for a, b in rows.items() if a[j] < 0]
        new = {}
        for a, b in rows.items():
            if a[j] == 0:
                _add_row(new, a, b)
        for ap, bp in pos:
            for an, bn in neg:
                cp, cn = -an[j], ap[j]
                a = [cp * x + cn * y for x, y in zip(ap, an)]
                _add_row(new, a, cp * bp + cn * bn)
                if len(new) > FM_MAX_ROWS:
                    raise SizeBudgetExceeded("Fourier-Motzkin row count exceeded")
        rows = new
        if any(not any(a) and b > 0 for a, b in rows.items()):
            return False
    return all(b <= 0 for a, b in rows.items())


def _add_row(rows, a, b):
    key, rhs = _normalize([Fraction(x) for x in a], Fraction(b))
    if not any(key):
        key = tuple([0] * len(key))
        rows[key] = max(rows.get(key, rhs), rhs)
        return
    if key in rows:
        rows[key] = max(rows[key], rhs)
    else:
        rows[key] = rhs
