"""Symbolic base varieties: a point, the projective line, open subsets of it.

Points of the line are ``INF`` or a :class:`FieldElement` ``a`` standing for
``[a:1]``.  The point base has the single point ``PT``.  Rational functions
are kept factored as ``c * prod (t - a)^e``; nothing is ever expanded.
"""

from fractions import Fraction
from math import floor

from .errors import FieldMismatch, NonIntegralPairing, UnsupportedBase
from .exact import QQ, FieldAutomorphism, FieldElement, apply_automorphism
from .polyhedral import Cone, Polyhedron, dot, mat_vec, vadd, vscale

INF = "inf"
PT = "pt"

POINT, P1, P1_OPEN = "point", "p1", "p1-open"


def point_key(p):
    """Deterministic order: finite points by coefficients, then infinity."""
    if p == INF:
        return (1, ())
    if p == PT:
        return (2, ())
    return (0, p.sort_key())


def point_str(p):
    return p if isinstance(p, str) else str(p)


def point_to_json(p):
    if isinstance(p, str):
        return p
    return {"a": p.to_json()}


def point_from_json(obj, field):
    if obj in (INF, PT):
        return obj
    return field.element([Fraction(x) for x in obj["a"]])


class BaseVariety:
    """A point, P^1 over a number field, or P^1 minus finitely many points."""

    __slots__ = ("kind", "field", "removed")

    def __init__(self, kind, field=QQ, removed=()):
        if kind not in (POINT, P1, P1_OPEN):
            raise UnsupportedBase(f"unknown base kind {kind!r}")
        self.kind = kind
        self.field = field
        rem = frozenset(self.point(p) for p in removed) if kind != POINT else frozenset()
        if kind == P1 and rem:
            kind = P1_OPEN
        if kind == P1_OPEN and not rem:
            kind = P1
        self.kind = kind
        self.removed = rem

    @classmethod
    def point_base(cls, field=QQ):
        return cls(POINT, field)

    @classmethod
    def projective_line(cls, field=QQ):
        return cls(P1, field)

    def point(self, x):
        """Coerce x into a point of this base's field (no locus check)."""
        if self.kind == POINT:
            if x != PT:
                raise UnsupportedBase("the point base has the single point 'pt'")
            return PT
        if x in (INF, "infinity", None):
            return INF
        if x == PT:
            raise UnsupportedBase("'pt' is not a point of the line")
        return self.field.element(x)

    def contains(self, p):
        if self.kind == POINT:
            return p == PT
        return p != PT and p not in self.removed

    def is_complete(self):
        return self.kind == P1

    def is_point(self):
        return self.kind == POINT

    def is_curve(self):
        return self.kind in (P1, P1_OPEN)

    def remove(self, points):
        pts = [self.point(p) for p in points]
        if self.kind == POINT:
            if pts:
                raise UnsupportedBase("cannot remove the point of a point base")
            return self
        return BaseVariety(P1_OPEN, self.field, set(self.removed) | set(pts))

    def ambient(self):
        """The complete variety this base is an open subset of."""
        return self if self.kind != P1_OPEN else BaseVariety(P1, self.field)

    def __eq__(self, other):
        return (isinstance(other, BaseVariety) and self.kind == other.kind
                and self.field == other.field and self.removed == other.removed)

    def __hash__(self):
        return hash((self.kind, self.field, self.removed))

    def __repr__(self):
        if self.kind == POINT:
            return "Point"
        if self.kind == P1:
            return "P1"
        pts = ", ".join(point_str(p) for p in sorted(self.removed, key=point_key))
        return f"P1 - {{{pts}}}"

    def to_json(self, field_name):
        out = {"kind": self.kind, "field": field_name}
        if self.removed:
            out["removed"] = [point_to_json(p) for p in sorted(self.removed, key=point_key)]
        return out


# ---------------------------------------------------------------------------
# Q-divisors


class QDivisor:
    """A finite formal sum of points with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for p, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[p] = c
        self.terms = clean

    @classmethod
    def point(cls, p, c=1):
        return cls({p: c})

    def coeff(self, p):
        return self.terms.get(p, Fraction(0))

    def support(self):
        return sorted(self.terms, key=point_key)

    def degree(self):
        return sum(self.terms.values(), Fraction(0))

    def floor(self):
        return QDivisor({p: floor(c) for p, c in self.terms.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, 0) + c
        return QDivisor(out)

    def __neg__(self):
        return QDivisor({p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return QDivisor({p: c * v for p, v in self.terms.items()})

    def restrict(self, base):
        return QDivisor({p: c for p, c in self.terms.items() if base.contains(p)})

    def is_effective(self):
        return all(c >= 0 for c in self.terms.values())

    def __le__(self, other):
        return (other - self).is_effective()

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, QDivisor) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}{{{point_str(p)}}}" for p, c in
                          ((p, self.terms[p]) for p in self.support()))

    def to_json(self):
        return [{"point": point_to_json(p), "coeff": str(self.terms[p])} for p in self.support()]


# ---------------------------------------------------------------------------
# rational functions


class RationalFunction:
    """c * prod (t - a)^e over the base field; roots are finite points."""

    __slots__ = ("constant", "factors", "_key")

    def __init__(self, constant, factors=None):
        if not isinstance(constant, FieldElement):
            constant = QQ.element(constant)
        if constant.is_zero():
            raise ValueError("the zero function is not a unit")
        self.constant = constant
        self.factors = {a: e for a, e in (factors or {}).items() if e}
        self._key = None

    @classmethod
    def one(cls, field=QQ):
        return cls(field.one())

    @classmethod
    def const(cls, c, field=QQ):
        return cls(field.element(c))

    @classmethod
    def linear(cls, a, field=QQ, exp=1):
        """(t - a)^exp."""
        return cls(field.one(), {field.element(a): exp})

    @classmethod
    def monomial(cls, field=QQ, exp=1):
        """t^exp."""
        return cls.linear(0, field, exp)

    @property
    def field(self):
        return self.constant.field

    def is_constant(self):
        return not self.factors

    def lift(self, field):
        """The same function with coefficients read in a larger field."""
        if self.field == field:
            return self
        return RationalFunction(field.element(self.constant),
                                {field.element(a): e for a, e in self.factors.items()})

    def __mul__(self, other):
        if other.field != self.field:
            if other.field.degree < self.field.degree:
                other = other.lift(self.field)
            else:
                return self.lift(other.field) * other
        out = dict(self.factors)
        for a, e in other.factors.items():
            out[a] = out.get(a, 0) + e
        return RationalFunction(self.constant * other.constant, out)

    def inverse(self):
        return RationalFunction(self.constant.inverse(), {a: -e for a, e in self.factors.items()})

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            if isinstance(k, Fraction) and k.denominator == 1:
                k = int(k)
            else:
                raise NonIntegralPairing(f"non-integral exponent {k}")
        return RationalFunction(self.constant ** k, {a: e * k for a, e in self.factors.items()})

    def degree(self):
        """Sum of exponents; the order of the pole at infinity."""
        return sum(self.factors.values())

    def order_at(self, p):
        if p == INF:
            return -self.degree()
        if p == PT:
            return 0
        return self.factors.get(p, 0)

    def divisor(self):
        terms = dict(self.factors)
        d = self.degree()
        if d:
            terms[INF] = -d
        return QDivisor(terms)

    def key(self):
        if self._key is None:
            self._key = (self.constant.field, self.constant.coeffs,
                         tuple(sorted(((a.coeffs, e) for a, e in self.factors.items()))))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if other.field != self.field:
            if other.field.degree < self.field.degree:
                other = other.lift(self.field)
            else:
                return self.lift(other.field) == other
        return (self.constant == other.constant
                and self.factors == other.factors)

    def __hash__(self):
        # rational data hashes the same in every field
        return hash((self.constant.coeffs[0], len(self.factors), self.degree()))

    def __repr__(self):
        parts = []
        if self.constant != 1 or not self.factors:
            parts.append(f"({self.constant})" if "+" in str(self.constant) else str(self.constant))
        for a in sorted(self.factors, key=lambda x: x.sort_key()):
            e = self.factors[a]
            base = "t" if a.is_zero() else f"(t-({a}))"
            parts.append(base if e == 1 else f"{base}^{e}")
        return "*".join(parts)

    def to_json(self):
        return {"c": self.constant.to_json(),
                "factors": [{"root": a.to_json(), "exp": self.factors[a]}
                            for a in sorted(self.factors, key=lambda x: x.sort_key())]}

    @classmethod
    def from_json(cls, obj, field):
        c = field.element([Fraction(x) for x in obj["c"]])
        factors = {}
        for fac in obj.get("factors", []):
            a = field.element([Fraction(x) for x in fac["root"]])
            factors[a] = factors.get(a, 0) + int(fac["exp"])
        return cls(c, factors)


def divisor_of_function(f, base):
    """div(f) restricted to the base."""
    if base.is_point():
        raise UnsupportedBase("functions on the point base have no divisor")
    return f.divisor().restrict(base)


def classify_positivity(d, base):
    """Bigness and semiampleness of a Q-divisor on a point or a curve base."""
    if base.is_point():
        ok = d.is_zero()
        return {"big": ok, "semiample": ok}
    if not base.is_complete():
        return {"big": True, "semiample": True}
    deg = d.restrict(base).degree()
    return {"big": deg > 0, "semiample": deg >= 0}


def section_dim(d, base):
    """h^0(P^1, O(d)) = max(0, deg floor(d) + 1)."""
    if not base.is_complete():
        raise UnsupportedBase("section dimensions are computed on the complete line only")
    return max(0, int(d.floor().degree()) + 1)


def section_membership(f, d, base):
    """div(f) + d >= 0 at every point of the base."""
    if base.is_point():
        return f.is_constant() and d.is_effective()
    total = f.divisor() + d
    return all(c >= 0 for p, c in total.terms.items() if base.contains(p))


# ---------------------------------------------------------------------------
# plurifunctions


class Plurifunction:
    """sum v_i (x) f_i in N (x) k(Y)^*; written multiplicatively in the f_i."""

    __slots__ = ("rank", "terms", "field", "_canon")

    def __init__(self, rank, terms=(), field=QQ):
        self.rank = rank
        clean = []
        for v, f in terms:
            v = tuple(int(x) for x in v)
            if len(v) != rank:
                raise ValueError("plurifunction vector of the wrong length")
            clean.append((v, f))
            field = f.field if f.field.degree >= field.degree else field
        self.terms = tuple(clean)
        self.field = field
        self._canon = None

    @classmethod
    def one(cls, rank, field=QQ):
        return cls(rank, (), field)

    def canonical(self):
        """The tuple (f_1, ..., f_n) with f_j = prod f_i^{v_i[j]}."""
        if self._canon is None:
            fs = []
            for j in range(self.rank):
                acc = RationalFunction.one(self.field)
                for v, f in self.terms:
                    if v[j]:
                        acc = acc * f ** v[j]
                fs.append(acc)
            self._canon = tuple(fs)
        return self._canon

    def __eq__(self, other):
        return (isinstance(other, Plurifunction) and self.rank == other.rank
                and self.canonical() == other.canonical())

    def __hash__(self):
        return hash(self.canonical())

    def is_trivial(self):
        return all(f.is_constant() and f.constant == 1 for f in self.canonical())

    def __mul__(self, other):
        return Plurifunction(self.rank, self.terms + other.terms, self.field)

    def inverse(self):
        return Plurifunction(self.rank, tuple((tuple(-x for x in v), f) for v, f in self.terms), self.field)

    def simplified(self):
        """Same plurifunction written on the standard basis."""
        return Plurifunction(self.rank, tuple((tuple(1 if i == j else 0 for i in range(self.rank)), f)
                                              for j, f in enumerate(self.canonical())
                                              if not (f.is_constant() and f.constant == 1)), self.field)

    def pushforward(self, F):
        """F_*(sum v (x) f) = sum F(v) (x) f."""
        return Plurifunction(len(F), tuple((mat_vec(F, v), f) for v, f in self.terms), self.field)

    def order_vector(self, p):
        """tau_p = sum ord_p(f_i) v_i."""
        acc = (0,) * self.rank
        for v, f in self.terms:
            o = f.order_at(p)
            if o:
                acc = vadd(acc, vscale(o, v))
        return acc

    def support(self):
        pts = set()
        for _, f in self.terms:
            pts.update(f.divisor().terms)
        return sorted(pts, key=point_key)

    def __repr__(self):
        if not self.terms:
            return "1"
        return " + ".join(f"{list(v)}(x){f!r}" for v, f in self.terms)

    def to_json(self):
        return [{"vector": list(v), "function": f.to_json()} for v, f in self.terms]

    @classmethod
    def from_json(cls, obj, rank, field):
        return cls(rank, tuple((tuple(int(x) for x in t["vector"]),
                                RationalFunction.from_json(t["function"], field)) for t in obj), field)


def plurifunction_eval(pf, m):
    """f(m) = prod f_i^{<m, v_i>}; the pairings must be integers."""
    acc = RationalFunction.one(pf.field)
    for v, f in pf.terms:
        k = dot(m, v)
        if isinstance(k, Fraction):
            if k.denominator != 1:
                raise NonIntegralPairing(f"<m, v> = {k} is not an integer")
            k = int(k)
        if k:
            acc = acc * f ** k
    return acc


def plurifunction_principal_divisor(pf, tail, base):
    """div(f) as a list of (point, tau_p + tail) terms on the base."""
    if base.is_point():
        return []
    out = []
    for p in pf.support():
        if not base.contains(p):
            continue
        tau = pf.order_vector(p)
        if any(tau):
            out.append((p, Polyhedron.from_generators([tau], tail=tail)))
    return out


# ---------------------------------------------------------------------------
# semilinear maps of the base


def _twist_matrix(sigma, M):
    return tuple(tuple(apply_automorphism(sigma, x) for x in row) for row in M)


def _mobius_mul(A, B):
    return ((A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
            (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]))


def _normalize_mobius(M):
    flat = [M[0][0], M[0][1], M[1][0], M[1][1]]
    lead = next(x for x in flat if not x.is_zero())
    inv = lead.inverse()
    return ((M[0][0] * inv, M[0][1] * inv), (M[1][0] * inv, M[1][1] * inv))


class SemilinearBaseMap:
    """psi(x) = M . sigma(x): twist the coordinates, then apply the Mobius map.

    On the point base ``mobius`` is None and only the twist matters.
    """

    __slots__ = ("field", "mobius", "twist")

    def __init__(self, field, mobius=None, twist=None):
        self.field = field
        self.twist = twist if twist is not None else FieldAutomorphism.identity(field)
        if self.twist.field != field and field.degree > 1:
            raise FieldMismatch("twist belongs to another field")
        if mobius is not None:
            M = tuple(tuple(field.element(x) for x in row) for row in mobius)
            d = M[0][0] * M[1][1] - M[0][1] * M[1][0]
            if d.is_zero():
                raise ValueError("singular Mobius matrix")
            mobius = _normalize_mobius(M)
        self.mobius = mobius

    @classmethod
    def identity(cls, field=QQ, point_base=False):
        if point_base:
            return cls(field, None)
        one, zero = field.one(), field.zero()
        return cls(field, ((one, zero), (zero, one)))

    @property
    def on_point(self):
        return self.mobius is None

    def is_identity(self):
        if not self.twist.is_identity():
            return False
        if self.mobius is None:
            return True
        M = self.mobius
        return M[0][1].is_zero() and M[1][0].is_zero() and M[0][0] == M[1][1]

    def __call__(self, p):
        if p == PT:
            return PT
        if self.mobius is None:
            raise UnsupportedBase("point-base map applied to a point of the line")
        (a, b), (c, d) = self.mobius
        if p == INF:
            return INF if c.is_zero() else a / c
        x = apply_automorphism(self.twist, self.field.element(p))
        den = c * x + d
        if den.is_zero():
            return INF
        return (a * x + b) / den

    def compose(self, other):
        """self o other."""
        tw = self.twist.compose(other.twist)
        if self.mobius is None or other.mobius is None:
            return SemilinearBaseMap(self.field, None, tw)
        M = _mobius_mul(self.mobius, _twist_matrix(self.twist, other.mobius))
        return SemilinearBaseMap(self.field, M, tw)

    def inverse(self):
        tinv = self.twist.inverse()
        if self.mobius is None:
            return SemilinearBaseMap(self.field, None, tinv)
        (a, b), (c, d) = self.mobius
        Minv = ((d, -b), (-c, a))
        return SemilinearBaseMap(self.field, _twist_matrix(tinv, Minv), tinv)

    def __eq__(self, other):
        return (isinstance(other, SemilinearBaseMap) and self.twist == other.twist
                and self.mobius == other.mobius)

    def __hash__(self):
        return hash((self.twist, self.mobius))

    def __repr__(self):
        tw = "" if self.twist.is_identity() else f", twist={self.twist!r}"
        if self.mobius is None:
            return f"SemilinearBaseMap(point{tw})"
        (a, b), (c, d) = self.mobius
        return f"SemilinearBaseMap([[{a},{b}],[{c},{d}]]{tw})"

    # action on divisors and functions ------------------------------------

    def push_divisor(self, d):
        return QDivisor({self(p): c for p, c in d.terms.items()})

    def pull_divisor(self, d):
        return self.inverse().push_divisor(d)

    def pull_function(self, f):
        """psi^* f, with div(psi^* f) = psi^*(div f)."""
        tinv = self.twist.inverse()
        if self.mobius is None:
            if not f.is_constant():
                raise UnsupportedBase("non-constant function on the point base")
            return RationalFunction(apply_automorphism(tinv, f.constant))
        (al, be), (ga, de) = self.mobius
        const = f.constant
        factors = {}
        for a, e in f.factors.items():
            lead = al - a * ga
            if lead.is_zero():
                const = const * (be - a * de) ** e
            else:
                const = const * lead ** e
                r = -(be - a * de) / lead
                factors[r] = factors.get(r, 0) + e
            if ga.is_zero():
                const = const * de ** (-e)
            else:
                const = const * ga ** (-e)
                r = -de / ga
                factors[r] = factors.get(r, 0) - e
        const = apply_automorphism(tinv, const)
        factors = {apply_automorphism(tinv, r): e for r, e in factors.items()}
        clean = {}
        for r, e in factors.items():
            clean[r] = clean.get(r, 0) + e
        return RationalFunction(const, clean)

    def push_function(self, f):
        return self.inverse().pull_function(f)

    def pull_plurifunction(self, pf):
        return Plurifunction(pf.rank, tuple((v, self.pull_function(f)) for v, f in pf.terms), pf.field)

    def to_json(self):
        out = {"twist": self.twist.to_json()}
        if self.mobius is not None:
            out["mobius"] = [[x.to_json() for x in row] for row in self.mobius]
        return out

    @classmethod
    def from_json(cls, obj, field):
        tw = FieldAutomorphism(field, field.element([Fraction(x) for x in obj["twist"]])) \
            if "twist" in obj else None
        M = None
        if obj.get("mobius") is not None:
            M = tuple(tuple(field.element([Fraction(x) for x in e]) for e in row) for row in obj["mobius"])
        return cls(field, M, tw)


def apply_base_map(psi, x):
    """Push a point, a Q-divisor or a function forward along psi."""
    if isinstance(x, QDivisor):
        return psi.push_divisor(x)
    if isinstance(x, RationalFunction):
        return psi.push_function(x)
    if isinstance(x, Plurifunction):
        return psi.inverse().pull_plurifunction(x)
    return psi(x)
