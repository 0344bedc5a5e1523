"""Pointed rational cones and tailed polyhedra.

The vertex/ray description is primary.  Halfspace descriptions are computed
once at construction by the double description method and cached on the
object.  All arithmetic is exact; rays and halfspace normals are stored as
primitive integer vectors.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import gcd, lcm

from .errors import (EmptyPolyhedron, FaceUnbounded, NonPointed,
                     RankBudgetExceeded, RankMismatch, SizeBudgetExceeded)

DUAL_RANK_BUDGET = 6
QUASIFAN_RANK_BUDGET = 4
HILBERT_RANK_BUDGET = 3


class _NegInf:
    """Marker for an unbounded-below support value."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INF"

    def __str__(self):
        return "-inf"

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self


NEG_INF = _NegInf()


# ---------------------------------------------------------------------------
# small vector helpers


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a):
    return tuple(c * x for x in a)


def vneg(a):
    return tuple(-x for x in a)


def as_vector(v):
    return tuple(Fraction(x) for x in v)


def primitive(v):
    """Positive rescaling of a rational vector to a primitive integer vector."""
    den = 1
    for x in v:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def is_zero(v):
    return not any(v)


def rank(rows):
    """Rank of a list of rational vectors."""
    m = [list(map(Fraction, r)) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rk = 0
    for col in range(ncols):
        piv = next((r for r in range(rk, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        p = m[rk][col]
        for r in range(len(m)):
            if r != rk and m[r][col] != 0:
                f = m[r][col] / p
                m[r] = [a - f * b for a, b in zip(m[r], m[rk])]
        rk += 1
        if rk == len(m):
            break
    return rk


def rref(rows, ncols):
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    rk = 0
    for col in range(ncols):
        piv = next((r for r in range(rk, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        p = m[rk][col]
        m[rk] = [x / p for x in m[rk]]
        for r in range(len(m)):
            if r != rk and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rk])]
        pivots.append(col)
        rk += 1
    return m[:rk], pivots


def nullspace(rows, ncols):
    """Integer basis of {x : r.x = 0 for r in rows}."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(primitive(v))
    return basis


def solve_linear(matrix_cols, target):
    """Solve sum_j x_j * col_j = target exactly; None if inconsistent."""
    n = len(target)
    k = len(matrix_cols)
    aug = [[Fraction(matrix_cols[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    red, pivots = rref(aug, k + 1)
    if k in pivots:
        return None
    x = [Fraction(0)] * k
    for row, p in zip(red, pivots):
        x[p] = row[k]
    return x


def canonical_subspace(basis, ncols):
    """Canonical integer basis (primitive rows of the rref) of a span."""
    if not basis:
        return ()
    red, _ = rref(basis, ncols)
    return tuple(primitive(r) for r in red)


def _project_out(vectors, subspace, ncols):
    """Orthogonal projection onto the complement of a subspace, primitive."""
    if not subspace:
        return [primitive(v) for v in vectors]
    sub = [list(map(Fraction, s)) for s in subspace]
    # Gram-Schmidt without normalisation keeps everything rational
    ortho = []
    for s in sub:
        w = s[:]
        for o in ortho:
            c = dot(w, o) / dot(o, o)
            w = [a - c * b for a, b in zip(w, o)]
        if any(w):
            ortho.append(w)
    out = []
    for v in vectors:
        w = list(map(Fraction, v))
        for o in ortho:
            c = dot(w, o) / dot(o, o)
            w = [a - c * b for a, b in zip(w, o)]
        out.append(primitive(w))
    return out


# ---------------------------------------------------------------------------
# double description


def double_description(ineqs, dim, eqs=()):
    """Generators of {y : a.y >= 0 (a in ineqs), e.y = 0 (e in eqs)}.

    Returns ``(lineality, rays)``: integer vectors such that the cone equals
    span(lineality) + cone(rays), with the rays extreme modulo the lineality.
    """
    ineqs = [primitive(a) for a in ineqs if any(a)]
    lin = nullspace([primitive(e) for e in eqs if any(e)], dim) if eqs else [
        tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
    ambient = len(lin)  # dimension left after the equations
    rays = []  # (vector, tight mask)
    for i, a in enumerate(ineqs):
        bit = 1 << i
        piv = next((k for k, l in enumerate(lin) if dot(a, l) != 0), None)
        if piv is not None:
            l0 = lin[piv]
            al0 = dot(a, l0)
            sign = 1 if al0 > 0 else -1
            new_lin = []
            for k, l in enumerate(lin):
                if k == piv:
                    continue
                al = dot(a, l)
                if al:
                    l = primitive([al0 * x - al * y for x, y in zip(l, l0)])
                new_lin.append(l)
            new_rays = []
            for r, z in rays:
                ar = dot(a, r)
                if ar:
                    r = primitive([sign * al0 * x - sign * ar * y for x, y in zip(r, l0)])
                new_rays.append((r, z | bit))
            new_rays.append((tuple(sign * x for x in l0), bit - 1))
            lin = new_lin
            rays = new_rays
            continue
        pos, zero, neg = [], [], []
        for r, z in rays:
            v = dot(a, r)
            if v > 0:
                pos.append((r, z, v))
            elif v < 0:
                neg.append((r, z, v))
            else:
                zero.append((r, z))
        new_rays = [(r, z | bit) for r, z in zero] + [(r, z) for r, z, _ in pos]
        need = ambient - len(lin) - 2
        masks = [z for _, z in rays]
        for p, zp, ap in pos:
            for n, zn, an in neg:
                common = zp & zn
                if need > 0 and bin(common).count("1") < need:
                    continue
                adjacent = True
                for z in masks:
                    if z is zp or z is zn:
                        continue
                    if z & common == common and z != zp and z != zn:
                        adjacent = False
                        break
                if adjacent:
                    r = primitive([ap * x - an * y for x, y in zip(n, p)])
                    new_rays.append((r, common | bit))
        seen = {}
        for r, z in new_rays:
            if r in seen:
                seen[r] |= z
            else:
                seen[r] = z
        rays = list(seen.items())
    return lin, [r for r, _ in rays]


# ---------------------------------------------------------------------------
# cones


class Cone:
    """A rational polyhedral cone: span(lineality) + cone(rays).

    Rays are primitive integer vectors, extreme, sorted, and reduced modulo
    the lineality space (which is empty for pointed cones).  ``eqs`` and
    ``ineqs`` are the cached halfspace description: the cone is
    {x : e.x = 0, a.x >= 0}.
    """

    __slots__ = ("dim", "rays", "lineality", "eqs", "ineqs", "_hash")

    def __init__(self, dim, rays, lineality, eqs, ineqs):
        self.dim = dim
        self.rays = rays
        self.lineality = lineality
        self.eqs = eqs
        self.ineqs = ineqs
        self._hash = None

    # constructors ---------------------------------------------------------

    @classmethod
    def from_rays(cls, rays, dim=None, lineality=()):
        rays = [tuple(r) for r in rays]
        lineality = [tuple(l) for l in lineality]
        if dim is None:
            if rays:
                dim = len(rays[0])
            elif lineality:
                dim = len(lineality[0])
            else:
                raise ValueError("dimension needed for the zero cone")
        for r in rays + lineality:
            if len(r) != dim:
                raise RankMismatch("ray length differs from the cone dimension")
        key = (dim, tuple(sorted(primitive(r) for r in rays if any(r))),
               tuple(sorted(primitive(l) for l in lineality if any(l))))
        return _cone_from_rays_cached(key)

    @classmethod
    def from_inequalities(cls, ineqs, dim, eqs=()):
        key = (dim, tuple(sorted(set(primitive(a) for a in ineqs if any(a)))),
               tuple(sorted(set(primitive(e) for e in eqs if any(e)))))
        return _cone_from_h_cached(key)

    @classmethod
    def zero(cls, dim):
        return cls.from_rays([], dim)

    @classmethod
    def full(cls, dim):
        return cls.from_rays([], dim, lineality=[tuple(1 if i == j else 0 for j in range(dim))
                                                 for i in range(dim)])

    @classmethod
    def orthant(cls, signs):
        n = len(signs)
        return cls.from_rays([tuple(s if i == j else 0 for j in range(n)) for i, s in enumerate(signs)], n)

    # predicates -----------------------------------------------------------

    @property
    def pointed(self):
        return not self.lineality

    @property
    def dimension(self):
        """Dimension of the linear span."""
        return self.dim - len(self.eqs)

    def is_full_dimensional(self):
        return not self.eqs

    def is_zero(self):
        return not self.rays and not self.lineality

    def contains(self, v, relint=False):
        if len(v) != self.dim:
            raise RankMismatch("vector length differs from the cone dimension")
        for e in self.eqs:
            if dot(e, v) != 0:
                return False
        for a in self.ineqs:
            s = dot(a, v)
            if s < 0 or (relint and s == 0):
                return False
        return True

    def contains_cone(self, other):
        return (all(self.contains(r) for r in other.rays)
                and all(self.contains(l) and self.contains(vneg(l)) for l in other.lineality))

    def generators(self):
        """Rays plus both signs of the lineality basis."""
        return list(self.rays) + list(self.lineality) + [vneg(l) for l in self.lineality]

    def __eq__(self, other):
        return (isinstance(other, Cone) and self.dim == other.dim and self.rays == other.rays
                and self.lineality == other.lineality)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, self.rays, self.lineality))
        return self._hash

    def __repr__(self):
        if self.lineality:
            return f"Cone(rays={list(self.rays)}, lineality={list(self.lineality)})"
        return f"Cone({list(self.rays)})"

    def intersect(self, other):
        if self.dim != other.dim:
            raise RankMismatch("cones of different rank")
        return Cone.from_inequalities(self.ineqs + other.ineqs, self.dim, self.eqs + other.eqs)

    def image(self, F):
        """Image under an integer matrix given as a tuple of rows."""
        gens = [mat_vec(F, r) for r in self.generators()]
        return Cone.from_rays([g for g in gens if any(g)], len(F))

    def to_json(self):
        out = {"rays": [list(r) for r in self.rays]}
        if self.lineality:
            out["lineality"] = [list(l) for l in self.lineality]
        return out

    @classmethod
    def from_json(cls, obj, dim):
        return cls.from_rays([tuple(int(x) for x in r) for r in obj.get("rays", [])], dim,
                             [tuple(int(x) for x in l) for l in obj.get("lineality", [])])


def _canonical_cone(dim, lin, rays, eqs, ineqs):
    lineality = canonical_subspace(lin, dim)
    rays = tuple(sorted(set(r for r in _project_out(rays, lineality, dim) if any(r))))
    eqs = canonical_subspace(eqs, dim)
    ineqs = tuple(sorted(set(a for a in _project_out(ineqs, eqs, dim) if any(a))))
    return Cone(dim, rays, lineality, eqs, ineqs)


@lru_cache(maxsize=65536)
def _cone_from_rays_cached(key):
    dim, rays, lineality = key
    if dim > 12:
        raise RankBudgetExceeded("cone dimension beyond budget")
    gens = list(rays) + list(lineality) + [vneg(l) for l in lineality]
    deqs, dineqs = double_description(gens, dim)
    # the cone is {x: e.x = 0 for e in deqs, a.x >= 0 for a in dineqs}
    lin, vrays = double_description(dineqs, dim, deqs)
    return _canonical_cone(dim, lin, vrays, deqs, dineqs)


@lru_cache(maxsize=65536)
def _cone_from_h_cached(key):
    dim, ineqs, eqs = key
    lin, vrays = double_description(list(ineqs), dim, list(eqs))
    gens = list(vrays) + list(lin) + [vneg(l) for l in lin]
    deqs, dineqs = double_description(gens, dim)
    return _canonical_cone(dim, lin, vrays, deqs, dineqs)


def dual_cone(c):
    """{m : <m, r> >= 0 for every r in c}."""
    if c.dim > DUAL_RANK_BUDGET:
        raise RankBudgetExceeded(f"dual cone in rank {c.dim} exceeds budget {DUAL_RANK_BUDGET}")
    return Cone.from_rays(list(c.ineqs), c.dim, lineality=list(c.eqs))


def mat_vec(F, v):
    return tuple(sum(Fraction(a) * b for a, b in zip(row, v)) if not all(isinstance(x, int) for x in v)
                 else sum(a * b for a, b in zip(row, v)) for row in F)


def mat_mul(A, B):
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def det(M):
    n = len(M)
    m = [list(map(Fraction, r)) for r in M]
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / m[c][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return d


def mat_inverse(M):
    n = len(M)
    aug = [list(map(Fraction, M[i])) + [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("singular matrix")
    inv = [row[n:] for row in red]
    if all(x.denominator == 1 for row in inv for x in row):
        return tuple(tuple(int(x) for x in row) for row in inv)
    return tuple(tuple(row) for row in inv)


# ---------------------------------------------------------------------------
# polyhedra


class Polyhedron:
    """Delta = conv(vertices) + tail, or the empty set.

    ``eqs``/``ineqs`` hold the halfspace description as pairs ``(a, b)``
    meaning ``a.x = b`` and ``a.x >= b``.  For the empty polyhedron the tail
    is only the declared ambient tail cone.
    """

    __slots__ = ("dim", "empty", "vertices", "tail", "eqs", "ineqs", "_hash")

    def __init__(self, dim, empty, vertices, tail, eqs, ineqs):
        self.dim = dim
        self.empty = empty
        self.vertices = vertices
        self.tail = tail
        self.eqs = eqs
        self.ineqs = ineqs
        self._hash = None

    # constructors ---------------------------------------------------------

    @classmethod
    def from_generators(cls, vertices, rays=(), dim=None, tail=None):
        vertices = [as_vector(v) for v in vertices]
        if tail is not None:
            rays = list(rays) + list(tail.rays)
            if tail.lineality:
                raise NonPointed("polyhedra must have pointed tails")
            dim = tail.dim if dim is None else dim
        rays = [tuple(r) for r in rays]
        if dim is None:
            if vertices:
                dim = len(vertices[0])
            elif rays:
                dim = len(rays[0])
            else:
                raise ValueError("dimension needed")
        if not vertices:
            return cls.empty_set(dim, tail if tail is not None else Cone.from_rays(rays, dim))
        for v in vertices:
            if len(v) != dim:
                raise RankMismatch("vertex length differs from the ambient rank")
        key = (dim, tuple(sorted(set(vertices))), tuple(sorted(set(primitive(r) for r in rays if any(r)))))
        return _polyhedron_cached(key)

    @classmethod
    def from_h(cls, ineqs, dim, eqs=(), tail_if_empty=None):
        """Polyhedron {x : a.x >= b, e.x = c} from pairs (a, b) and (e, c)."""
        rows = []
        for a, b in ineqs:
            rows.append(tuple(Fraction(x) for x in a) + (-Fraction(b),))
        rows.append(tuple([0] * dim) + (1,))
        erows = [tuple(Fraction(x) for x in e) + (-Fraction(c),) for e, c in eqs]
        lin, rays = double_description(rows, dim + 1, erows)
        if lin:
            raise NonPointed("intersection contains a line")
        verts = [tuple(Fraction(x, r[-1]) for x in r[:-1]) for r in rays if r[-1] > 0]
        trays = [r[:-1] for r in rays if r[-1] == 0]
        if not verts:
            if tail_if_empty is None:
                tail_if_empty = Cone.from_inequalities([a for a, _ in ineqs], dim, [e for e, _ in eqs])
            return cls.empty_set(dim, tail_if_empty)
        return cls.from_generators(verts, trays, dim)

    @classmethod
    def empty_set(cls, dim, tail=None):
        if tail is None:
            tail = Cone.zero(dim)
        return cls(dim, True, (), tail, (), ())

    @classmethod
    def point(cls, v):
        v = as_vector(v)
        return cls.from_generators([v], [], len(v))

    @classmethod
    def from_cone(cls, cone):
        return cls.from_generators([tuple([Fraction(0)] * cone.dim)], tail=cone)

    @classmethod
    def interval(cls, lo, hi):
        """Rank one polyhedron [lo, hi]; ``None`` marks an infinite end."""
        if lo is None and hi is None:
            raise NonPointed("the whole line is not pointed")
        if lo is None:
            return cls.from_generators([(Fraction(hi),)], [(-1,)], 1)
        if hi is None:
            return cls.from_generators([(Fraction(lo),)], [(1,)], 1)
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            return cls.empty_set(1)
        return cls.from_generators([(lo,), (hi,)], [], 1)

    # predicates -----------------------------------------------------------

    @property
    def rays(self):
        return self.tail.rays

    def is_bounded(self):
        return self.empty or self.tail.is_zero()

    def is_tail(self):
        """True if the polyhedron is its own tail cone."""
        return (not self.empty and len(self.vertices) == 1 and not any(self.vertices[0]))

    def contains_point(self, v, relint=False):
        if len(v) != self.dim:
            raise RankMismatch("vector length differs from the ambient rank")
        if self.empty:
            return False
        for e, c in self.eqs:
            if dot(e, v) != c:
                return False
        for a, b in self.ineqs:
            s = dot(a, v)
            if s < b or (relint and s == b):
                return False
        return True

    def contains(self, other):
        """other is a subset of self."""
        if other.dim != self.dim:
            raise RankMismatch("polyhedra of different rank")
        if other.empty:
            return True
        if self.empty:
            return False
        if not all(self.contains_point(v) for v in other.vertices):
            return False
        return all(self.tail.contains(r) for r in other.tail.rays)

    def __eq__(self, other):
        if not isinstance(other, Polyhedron):
            return NotImplemented
        if self.dim != other.dim or self.empty != other.empty:
            return False
        if self.empty:
            return True
        return self.vertices == other.vertices and self.tail == other.tail

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, self.empty, self.vertices, self.tail if not self.empty else None))
        return self._hash

    def __repr__(self):
        if self.empty:
            return "Polyhedron(empty)"
        vs = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.vertices)
        if self.tail.is_zero():
            return f"Polyhedron(conv[{vs}])"
        return f"Polyhedron(conv[{vs}] + {self.tail!r})"

    # operations -------------------------------------------------------------

    def translate(self, v):
        if self.empty:
            return self
        return Polyhedron.from_generators([vadd(x, v) for x in self.vertices], tail=self.tail)

    def dilate(self, c):
        """c * Delta = {c v} + tail for c > 0; the tail for c = 0 (also for the empty set)."""
        c = Fraction(c)
        if c < 0:
            raise ValueError("dilation factor must be nonnegative")
        if c == 0:
            return Polyhedron.from_cone(self.tail)
        if self.empty:
            return self
        return Polyhedron.from_generators([vscale(c, v) for v in self.vertices], tail=self.tail)

    def image(self, F, target_dim=None):
        """Linear image under an integer matrix (tuple of rows)."""
        target_dim = len(F) if target_dim is None else target_dim
        if self.empty:
            return Polyhedron.empty_set(target_dim, self.tail.image(F) if F else Cone.zero(target_dim))
        verts = [mat_vec(F, v) for v in self.vertices]
        rays = [mat_vec(F, r) for r in self.tail.rays]
        return Polyhedron.from_generators(verts, [r for r in rays if any(r)], target_dim)

    def to_json(self):
        if self.empty:
            return {"empty": True, "rays": [], "vertices": []}
        return {"empty": False,
                "rays": [list(r) for r in self.tail.rays],
                "vertices": [[str(x) for x in v] for v in self.vertices]}

    @classmethod
    def from_json(cls, obj, dim, tail=None):
        if obj.get("empty"):
            return cls.empty_set(dim, tail)
        verts = [tuple(Fraction(x) for x in v) for v in obj["vertices"]]
        rays = [tuple(int(x) for x in r) for r in obj.get("rays", [])]
        return cls.from_generators(verts, rays, dim)


@lru_cache(maxsize=65536)
def _polyhedron_cached(key):
    dim, vertices, rays = key
    big = dim + 1
    gens = []
    for v in vertices:
        den = lcm(*(x.denominator for x in v)) if v else 1
        gens.append(tuple(int(x * den) for x in v) + (den,))
    for r in rays:
        gens.append(tuple(r) + (0,))
    deqs, dineqs = double_description(gens, big)
    # facets of the homogenisation: y.(x,t) >= 0
    tight_rows = list(deqs)
    verts = []
    trays = []
    seen = set()
    for g in gens:
        key_g = primitive(g)
        if key_g in seen:
            continue
        seen.add(key_g)
        rows = tight_rows + [y for y in dineqs if dot(y, g) == 0]
        if rank(rows) != big - 1:
            continue
        if g[-1] > 0:
            verts.append(tuple(Fraction(x, g[-1]) for x in g[:-1]))
        else:
            trays.append(g[:-1])
    verts = tuple(sorted(set(verts)))
    tail = Cone.from_rays(trays, dim)
    if tail.lineality:
        raise NonPointed("polyhedra must have pointed tails")
    eqs = tuple((y[:-1], Fraction(-y[-1])) for y in deqs)
    ineqs = tuple((y[:-1], Fraction(-y[-1])) for y in dineqs if any(y[:-1]))
    return Polyhedron(dim, False, verts, tail, eqs, ineqs)


# ---------------------------------------------------------------------------
# the operations of the module


def minkowski_sum(a, b):
    if a.dim != b.dim:
        raise RankMismatch("Minkowski sum of polyhedra of different rank")
    if a.empty or b.empty:
        tail = Cone.from_rays(list(a.tail.rays) + list(b.tail.rays), a.dim)
        return Polyhedron.empty_set(a.dim, tail)
    verts = [vadd(v, w) for v in a.vertices for w in b.vertices]
    return Polyhedron.from_generators(verts, list(a.tail.rays) + list(b.tail.rays), a.dim)


def in_dual_of_tail(d, m):
    return all(dot(m, r) >= 0 for r in d.tail.rays) and all(dot(m, l) == 0 for l in d.tail.lineality)


def support_value(d, m):
    """h_d(m) = min <m, d>, or NEG_INF when m is outside the dual of the tail."""
    if d.empty:
        raise EmptyPolyhedron("support value of the empty polyhedron")
    if len(m) != d.dim:
        raise RankMismatch("dual vector length differs from the ambient rank")
    if not in_dual_of_tail(d, m):
        return NEG_INF
    return min(dot(m, v) for v in d.vertices)


def face_by(d, m):
    if d.empty:
        raise EmptyPolyhedron("face of the empty polyhedron")
    if len(m) != d.dim:
        raise RankMismatch("dual vector length differs from the ambient rank")
    if not in_dual_of_tail(d, m):
        raise FaceUnbounded(f"{list(map(str, m))} is not in the dual of the tail")
    h = min(dot(m, v) for v in d.vertices)
    verts = [v for v in d.vertices if dot(m, v) == h]
    rays = [r for r in d.tail.rays if dot(m, r) == 0]
    return Polyhedron.from_generators(verts, rays, d.dim)


def intersect(a, b):
    if a.dim != b.dim:
        raise RankMismatch("intersection of polyhedra of different rank")
    tail = a.tail.intersect(b.tail)
    if a.empty or b.empty:
        return Polyhedron.empty_set(a.dim, tail)
    if a == b:
        return a
    if a.contains(b):
        return b
    if b.contains(a):
        return a
    return Polyhedron.from_h(list(a.ineqs) + list(b.ineqs), a.dim,
                             list(a.eqs) + list(b.eqs), tail_if_empty=tail)


def membership(d, v, mode="boundary"):
    """Exact membership; mode "relint" tests the relative interior."""
    relint = mode in ("relint", "relative-interior", "interior")
    if isinstance(d, Cone):
        return d.contains(tuple(v), relint=relint)
    return d.contains_point(as_vector(v), relint=relint)


def cone_face_test(sub, sup):
    """Some m in sup^dual with sub = sup cut by m-perp, or None."""
    if sub.dim != sup.dim:
        raise RankMismatch("cones of different rank")
    if not sup.contains_cone(sub):
        return None
    gens = sub.generators()
    tight = [a for a in sup.ineqs if all(dot(a, g) == 0 for g in gens)]
    m = tuple(sum(col) for col in zip(*tight)) if tight else tuple([0] * sup.dim)
    face = sup.intersect(Cone.from_inequalities([], sup.dim, [m])) if any(m) else sup
    return m if face == sub else None


def is_face_of(f, d):
    """Is f a face of d (both polyhedra, f contained in d)?"""
    if f.empty:
        return True
    if not d.contains(f):
        return False
    pts = list(f.vertices)
    rays = list(f.tail.rays)
    tight = [(a, b) for a, b in d.ineqs
             if all(dot(a, v) == b for v in pts) and all(dot(a, r) == 0 for r in rays)]
    if not tight:
        return f == d
    m = tuple(sum(a[i] for a, _ in tight) for i in range(d.dim))
    return face_by(d, m) == f


class QuasiFanCell:
    __slots__ = ("cone", "linear_form")

    def __init__(self, cone, linear_form):
        self.cone = cone
        self.linear_form = linear_form

    def __repr__(self):
        return f"QuasiFanCell({self.cone!r}, form={tuple(map(str, self.linear_form))})"


def normal_quasifan(d):
    """Cells of tail^dual on which h_d is linear, with the minimising vertex."""
    if d.empty:
        raise EmptyPolyhedron("quasifan of the empty polyhedron")
    if d.dim > QUASIFAN_RANK_BUDGET:
        raise RankBudgetExceeded(f"quasifan in rank {d.dim} exceeds budget {QUASIFAN_RANK_BUDGET}")
    cells = []
    for v in d.vertices:
        rows = [tuple(r) for r in d.tail.rays] + [vsub(w, v) for w in d.vertices if w != v]
        cone = Cone.from_inequalities(rows, d.dim, list(d.tail.lineality))
        cells.append(QuasiFanCell(cone, v))
    return cells


def hilbert_basis(c):
    """Minimal generating set of the monoid c cap Z^n (pointed c, rank <= 3)."""
    if not c.pointed:
        raise NonPointed("Hilbert basis of a cone with lineality")
    if c.dim > HILBERT_RANK_BUDGET:
        raise RankBudgetExceeded(f"Hilbert basis in rank {c.dim} exceeds budget {HILBERT_RANK_BUDGET}")
    if not c.rays:
        return []
    lo = [sum(min(0, r[k]) for r in c.rays) for k in range(c.dim)]
    hi = [sum(max(0, r[k]) for r in c.rays) for k in range(c.dim)]
    size = 1
    for a, b in zip(lo, hi):
        size *= (b - a + 1)
    if size > 2_000_000:
        raise SizeBudgetExceeded("Hilbert basis enumeration box too large")
    cands = set(c.rays)
    for pt in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        if any(pt) and c.contains(pt):
            cands.add(pt)
    cands = sorted(cands)
    basis = []
    for x in cands:
        reducible = False
        for y in cands:
            if y == x:
                continue
            z = vsub(x, y)
            if any(z) and c.contains(z):
                reducible = True
                break
        if not reducible:
            basis.append(x)
    return sorted(basis)


def lattice_points_in_box(c, bound):
    """Integer points of the cone with all coordinates in [-bound, bound]."""
    pts = []
    for pt in product(range(-bound, bound + 1), repeat=c.dim):
        if c.contains(pt):
            pts.append(pt)
    return pts
