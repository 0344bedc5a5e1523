"""Polyhedral divisors over a point or a curve base, their morphisms and faces.

A pp-divisor is stored on its ambient base with explicit empty coefficients;
its locus is the base minus those points.  Coefficients equal to the tail
cone are neutral and never stored.
"""

import os
from fractions import Fraction
from itertools import product

from .base import (INF, PT, BaseVariety, Plurifunction, QDivisor, RationalFunction,
                   SemilinearBaseMap, classify_positivity, point_from_json, point_key,
                   point_str, point_to_json, section_membership)
from .errors import (BaseMismatch, ChainMismatch, EmptyLocus, NonPointed, NotASection,
                     OutsideDualCone, OutsideLocus, RankMismatch, TailViolation)
from .polyhedral import (Cone, Polyhedron, dot, dual_cone, face_by, hilbert_basis,
                         identity_matrix, intersect, lattice_points_in_box, mat_inverse,
                         mat_mul, mat_vec, minkowski_sum, normal_quasifan, support_value)
from .verdict import Verdict

DEFAULT_BOUND = 4


def default_bound():
    env = os.environ.get("DIVFAN_BOUND")
    return int(env) if env else DEFAULT_BOUND


class PPDivisor:
    """sum Delta_p (x) p over a base; ``coeffs[p] is None`` marks an empty coefficient."""

    __slots__ = ("name", "base", "rank", "tail", "coeffs", "_hash")

    def __init__(self, base, tail, coeffs=(), name=None):
        self.name = name
        self.base = base
        self.tail = tail
        self.rank = tail.dim
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        clean = {}
        for p, poly in items:
            p = base.point(p)
            if not base.contains(p):
                raise OutsideLocus(f"coefficient at {point_str(p)}, which is not a point of the base")
            if p in clean:
                raise ValueError(f"two coefficients at {point_str(p)}")
            if poly is None or poly.empty:
                clean[p] = None
                continue
            if poly.dim != self.rank:
                raise RankMismatch("coefficient rank differs from the tail rank")
            if poly.tail != tail:
                raise TailViolation(f"coefficient at {point_str(p)} has tail {poly.tail!r}, expected {tail!r}")
            if poly.is_tail():
                continue
            clean[p] = poly
        if base.is_point() and clean:
            if None in clean.values():
                raise EmptyLocus("an empty coefficient on the point base leaves no locus")
            raise TailViolation("on the point base the coefficient is the tail cone")
        self.coeffs = {p: clean[p] for p in sorted(clean, key=point_key)}
        self._hash = None

    # access -------------------------------------------------------------

    def coeff(self, p):
        """The polyhedron at p; the empty polyhedron is returned for empty coefficients."""
        if p in self.coeffs:
            c = self.coeffs[p]
            return Polyhedron.empty_set(self.rank, self.tail) if c is None else c
        if not self.base.contains(p):
            return Polyhedron.empty_set(self.rank, self.tail)
        return Polyhedron.from_cone(self.tail)

    def points(self):
        return list(self.coeffs)

    def empty_points(self):
        return [p for p, c in self.coeffs.items() if c is None]

    def special_points(self):
        return [p for p, c in self.coeffs.items() if c is not None]

    def locus(self):
        return locus(self)

    def with_name(self, name):
        return PPDivisor(self.base, self.tail, self.coeffs, name)

    def __eq__(self, other):
        return (isinstance(other, PPDivisor) and self.base == other.base and self.tail == other.tail
                and self.coeffs == other.coeffs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.base, self.tail, tuple(self.coeffs.items())))
        return self._hash

    def __repr__(self):
        parts = []
        for p, c in self.coeffs.items():
            parts.append(f"{'empty' if c is None else c!r} (x) {{{point_str(p)}}}")
        body = " + ".join(parts) if parts else f"{self.tail!r}"
        label = f"{self.name}: " if self.name else ""
        return f"<{label}{body} on {self.base!r}>"

    def to_json(self, base_name):
        coeffs = []
        for p in sorted(self.coeffs, key=point_key):
            c = self.coeffs[p]
            if c is None:
                coeffs.append({"point": point_to_json(p), "empty": True})
            else:
                coeffs.append({"point": point_to_json(p), "poly": c.to_json()})
        return {"name": self.name, "base": base_name, "rank": self.rank,
                "tail": self.tail.to_json(), "coeffs": coeffs}

    @classmethod
    def from_json(cls, obj, base):
        rank = int(obj["rank"])
        tail = Cone.from_json(obj["tail"], rank)
        coeffs = []
        for c in obj.get("coeffs", []):
            p = point_from_json(c["point"], base.field)
            if c.get("empty"):
                coeffs.append((p, None))
            else:
                coeffs.append((p, Polyhedron.from_json(c["poly"], rank, tail)))
        return cls(base, tail, coeffs, obj.get("name"))


def toric(cone, field=None, name=None):
    """The pp-divisor over the point base with tail ``cone``."""
    from .exact import QQ
    return PPDivisor(BaseVariety.point_base(field or QQ), cone, (), name)


# ---------------------------------------------------------------------------
# evaluation, locus, properness


def _in_dual(tail, m):
    return all(dot(m, r) >= 0 for r in tail.rays) and all(dot(m, l) == 0 for l in tail.lineality)


def evaluate(d, m):
    """D(m) = sum h_{Delta_p}(m) p on the locus."""
    m = tuple(m)
    if len(m) != d.rank:
        raise RankMismatch("dual vector length differs from the lattice rank")
    if not _in_dual(d.tail, m):
        raise OutsideDualCone(f"m = {list(map(str, m))} is not in the dual of the tail")
    return QDivisor({p: support_value(c, m) for p, c in d.coeffs.items() if c is not None})


def locus(d):
    return d.base.remove(d.empty_points())


def _integral(m):
    return all(Fraction(x).denominator == 1 for x in m)


def check_proper(d, box=3):
    """Tail agreement plus bigness on relint(tail^dual) and semiampleness on its boundary."""
    for p, c in d.coeffs.items():
        if c is not None and c.tail != d.tail:
            return Verdict.no({"point": point_str(p)}, reason="tail mismatch")
    loc = locus(d)
    dual = dual_cone(d.tail)
    samples = lattice_points_in_box(dual, box)
    for m in sorted(samples, key=lambda v: (sum(abs(x) for x in v), v)):
        ev = evaluate(d, m)
        pos = classify_positivity(ev, loc)
        if dual.contains(m, relint=True):
            if not pos["big"]:
                return Verdict.no({"m": list(m), "divisor": ev.to_json()}, reason="not big")
        elif not pos["semiample"]:
            return Verdict.no({"m": list(m), "divisor": ev.to_json()}, reason="not semiample")
    return Verdict.yes(samples=len(samples))


# ---------------------------------------------------------------------------
# localization


def _zero_set(f, ev, loc):
    total = f.divisor() + ev if not loc.is_point() else ev
    return frozenset(p for p, c in total.terms.items() if c > 0 and loc.contains(p))


def localize(d, m, f, name=None):
    """D_f = sum face(Delta_p, m) (x) p restricted to Loc(D) minus Z(f)."""
    m = tuple(m)
    if not _integral(m):
        raise OutsideDualCone("m must be a lattice point")
    ev = evaluate(d, m)
    loc = locus(d)
    if not section_membership(f, ev, loc):
        raise NotASection(f"{f!r} is not a section of D(m) on the locus")
    Z = _zero_set(f, ev, loc)
    new_tail = d.tail.intersect(Cone.from_inequalities([], d.rank, [m])) if any(m) else d.tail
    coeffs = {}
    for p, c in d.coeffs.items():
        coeffs[p] = None if c is None else face_by(c, m)
    for p in Z:
        coeffs[p] = None
    return PPDivisor(d.base, new_tail, coeffs, name)


def minimal_shift(d, m, m2):
    """Least k >= 0 with m2 + k m minimised on face(Delta, m) for every coefficient."""
    k = Fraction(0)
    polys = [c for c in d.coeffs.values() if c is not None] + [Polyhedron.from_cone(d.tail)]
    for r in d.tail.rays:
        a, b = dot(m, r), dot(m2, r)
        if a > 0 and b < 0:
            k = max(k, Fraction(-b, 1) / a)
    for c in polys:
        h = min(dot(m, v) for v in c.vertices)
        face_vals = [dot(m2, v) for v in c.vertices if dot(m, v) == h]
        hf = min(face_vals)
        for v in c.vertices:
            gap = dot(m, v) - h
            if gap > 0:
                need = (hf - dot(m2, v)) / gap
                if need > k:
                    k = need
    return -((-k.numerator) // k.denominator)


def localization_identity_check(d, m, f, m2):
    """D_f(m') = D(m' + k m) - D(k m) on Y_f for the minimal admissible k."""
    m, m2 = tuple(m), tuple(m2)
    df = localize(d, m, f)
    if not _in_dual(df.tail, m2):
        raise OutsideDualCone("m' is not in the dual of the face of the tail")
    k = minimal_shift(d, m, m2)
    shifted = tuple(a + k * b for a, b in zip(m2, m))
    yf = locus(df)
    lhs = evaluate(df, m2).restrict(yf)
    rhs = (evaluate(d, shifted) - evaluate(d, tuple(k * x for x in m))).restrict(yf)
    if lhs == rhs:
        return Verdict.yes(k=k)
    return Verdict.no({"lhs": lhs.to_json(), "rhs": rhs.to_json()}, k=k)


# ---------------------------------------------------------------------------
# pullback, pushforward, morphisms


def pullback(d, psi, name=None):
    """Coefficient Delta_p moves to psi^{-1}(p)."""
    inv = psi.inverse()
    base = d.base
    if base.removed:
        base = BaseVariety(base.kind, base.field, [inv(p) for p in base.removed])
    return PPDivisor(base, d.tail, {inv(p): c for p, c in d.coeffs.items()}, name)


def pushforward(d, F, target_tail, name=None):
    """F_*(D) = sum (F(Delta_p) + target tail) (x) p."""
    F = tuple(tuple(row) for row in F)
    if len(F) != target_tail.dim or any(len(row) != d.rank for row in F):
        raise RankMismatch("matrix shape does not match the lattices")
    for r in d.tail.rays:
        if not target_tail.contains(mat_vec(F, r)):
            raise TailViolation(f"F maps the tail ray {list(r)} outside the target tail")
    base_poly = Polyhedron.from_cone(target_tail)
    coeffs = {}
    for p, c in d.coeffs.items():
        if c is None:
            coeffs[p] = None
        else:
            coeffs[p] = minkowski_sum(c.image(F), base_poly)
    return PPDivisor(d.base, target_tail, coeffs, name)


class PPDMorphism:
    """(psi, F, f): a base map, a lattice map N -> N' and a plurifunction on N'."""

    __slots__ = ("psi", "F", "plurifn")

    def __init__(self, psi, F, plurifn):
        self.psi = psi
        self.F = tuple(tuple(int(x) for x in row) for row in F)
        if plurifn.rank != len(self.F):
            raise RankMismatch("plurifunction rank differs from the target lattice")
        self.plurifn = plurifn

    @classmethod
    def identity(cls, d):
        point = d.base.is_point()
        return cls(SemilinearBaseMap.identity(d.base.field, point_base=point),
                   identity_matrix(d.rank), Plurifunction.one(d.rank, d.base.field))

    def __eq__(self, other):
        return (isinstance(other, PPDMorphism) and self.psi == other.psi and self.F == other.F
                and self.plurifn == other.plurifn)

    def __hash__(self):
        return hash((self.psi, self.F))

    def __repr__(self):
        return f"PPDMorphism({self.psi!r}, F={[list(r) for r in self.F]}, f={self.plurifn!r})"

    def inverse(self):
        Finv = mat_inverse(self.F)
        if any(not isinstance(x, int) for row in Finv for x in row):
            raise ValueError("lattice map is not unimodular")
        pinv = self.psi.inverse()
        f = pinv.pull_plurifunction(self.plurifn.pushforward(Finv)).inverse()
        return PPDMorphism(pinv, Finv, f)


def _relevant_points(src, dst, phi):
    pts = set(src.coeffs)
    pts.update(phi.plurifn.support())
    inv = phi.psi.inverse()
    for p in dst.coeffs:
        pts.add(inv(p))
    for p in dst.base.removed:
        pts.add(inv(p))
    return sorted((p for p in pts if locus(src).contains(p)), key=point_key)


def verify_morphism(src, dst, phi):
    """psi^*(D') <= F_*(D) + div(f): F(Delta_q) + tau_q lies in Delta'_{psi(q)}."""
    if len(phi.F) != dst.rank or any(len(r) != src.rank for r in phi.F):
        return Verdict.no({"reason": "rank"}, reason="matrix shape does not match the lattices")
    for r in src.tail.rays:
        if not dst.tail.contains(mat_vec(phi.F, r)):
            return Verdict.no({"point": "generic", "ray": list(r)}, reason="tail not mapped into tail")
    if src.base.is_point() != dst.base.is_point():
        return Verdict.no({"reason": "base"}, reason="base kinds differ")
    for q in _relevant_points(src, dst, phi):
        tau = phi.plurifn.order_vector(q) if not src.base.is_point() else (0,) * dst.rank
        image = src.coeff(q).image(phi.F, dst.rank).translate(tau)
        target = dst.coeff(phi.psi(q))
        if not target.contains(image):
            return Verdict.no({"point": point_str(q), "image": point_str(phi.psi(q))},
                              reason="coefficient not contained")
    return Verdict.yes()


def compose_morphisms(a, b):
    """a o b = (psi_a psi_b, F_a F_b, F_a*(f_b) . psi_b^*(f_a))."""
    if len(b.F) != (len(a.F[0]) if a.F else 0):
        raise ChainMismatch("lattice maps do not chain")
    if a.psi.on_point != b.psi.on_point:
        raise ChainMismatch("base maps do not chain")
    psi = a.psi.compose(b.psi)
    F = mat_mul(a.F, b.F)
    f = b.plurifn.pushforward(a.F) * b.psi.pull_plurifunction(a.plurifn)
    return PPDMorphism(psi, F, f)


def transport(d, phi, name=None):
    """The pp-divisor D' with Delta'_{psi(q)} = F(Delta_q) + tau_q; phi: D -> D' is an isomorphism."""
    new_tail = d.tail.image(phi.F)
    pts = set(d.coeffs) | set(phi.plurifn.support() if not d.base.is_point() else [])
    coeffs = {}
    for q in pts:
        if not d.base.contains(q):
            continue
        c = d.coeff(q)
        if c.empty:
            coeffs[phi.psi(q)] = None
            continue
        tau = phi.plurifn.order_vector(q)
        coeffs[phi.psi(q)] = c.image(phi.F, len(phi.F)).translate(tau)
    base = d.base
    if base.removed:
        base = BaseVariety(base.kind, base.field, [phi.psi(p) for p in base.removed])
    return PPDivisor(base, new_tail, coeffs, name)


# ---------------------------------------------------------------------------
# faces


class FaceCertificate:
    __slots__ = ("witnesses",)

    def __init__(self, witnesses):
        self.witnesses = [(tuple(m), f) for m, f in witnesses]

    def __repr__(self):
        return "FaceCertificate(" + ", ".join(f"(m={[str(x) for x in m]}, f={f!r})"
                                              for m, f in self.witnesses) + ")"

    def __len__(self):
        return len(self.witnesses)

    def to_json(self):
        return [{"m": [str(x) for x in m], "f": f.to_json()} for m, f in self.witnesses]

    @classmethod
    def from_json(cls, obj, field):
        return cls([(tuple(Fraction(x) for x in w["m"]), RationalFunction.from_json(w["f"], field))
                    for w in obj])


def _contained(sub, sup):
    if sub.base != sup.base or sub.rank != sup.rank:
        return False
    if not sup.tail.contains_cone(sub.tail):
        return False
    for p in set(sub.coeffs) | set(sup.coeffs):
        if not sup.coeff(p).contains(sub.coeff(p)):
            return False
    return True


def _face_or_empty(c, m):
    return c if c.empty else face_by(c, m)


def verify_face(sub, sup, cert):
    """The definition of a face, clause by clause, against explicit witnesses."""
    if sub.base != sup.base:
        return Verdict.no({"clause": "base"}, reason="different bases")
    if not _contained(sub, sup):
        return Verdict.no({"clause": "containment"}, reason="coefficients not contained")
    loc_sup = locus(sup)
    loc_sub = locus(sub)
    zero_sets = []
    for i, (m, f) in enumerate(cert.witnesses):
        if not _integral(m) or not _in_dual(sup.tail, m):
            return Verdict.no({"clause": "m", "index": i}, reason="m not a lattice point of the dual tail")
        ev = evaluate(sup, m)
        if not section_membership(f, ev, loc_sup):
            return Verdict.no({"clause": "section", "index": i}, reason="f is not a section of D(m)")
        zero_sets.append(_zero_set(f, ev, loc_sup))
    if not zero_sets:
        return Verdict.no({"clause": "locus"}, reason="no witnesses")
    # Loc(sub) = Loc(sup) minus the common zero set
    common = frozenset.intersection(*zero_sets)
    removed_sub = set(sub.empty_points()) | set(sub.base.removed)
    removed_sup = set(sup.empty_points()) | set(sup.base.removed)
    if removed_sub != removed_sup | set(common):
        extra = sorted(removed_sub ^ (removed_sup | set(common)), key=point_key)
        return Verdict.no({"clause": "locus", "points": [point_str(p) for p in extra]},
                          reason="locus is not the union of the principal opens")
    pts = sorted(set(sub.coeffs) | set(sup.coeffs), key=point_key)
    for i, ((m, f), Z) in enumerate(zip(cert.witnesses, zero_sets)):
        if face_by(Polyhedron.from_cone(sub.tail), m) != face_by(Polyhedron.from_cone(sup.tail), m):
            return Verdict.no({"clause": "face", "index": i, "point": "generic"},
                              reason="tail faces differ")
        for p in pts:
            if p in Z or not loc_sup.contains(p):
                continue
            a, b = sub.coeff(p), sup.coeff(p)
            if a.empty or face_by(a, m) != face_by(b, m):
                return Verdict.no({"clause": "face", "index": i, "point": point_str(p)},
                                  reason="faces differ off the zero set")
    return Verdict.yes(cert)


def _cell_candidates(cone, bound):
    """Nonnegative combinations of Hilbert basis elements with coefficient sum <= bound."""
    pieces = [cone]
    if not cone.pointed:
        pieces = []
        for signs in product((1, -1), repeat=cone.dim):
            piece = cone.intersect(Cone.orthant(signs))
            if not piece.is_zero():
                pieces.append(piece)
    out = set()
    for piece in pieces:
        hb = hilbert_basis(piece)
        frontier = {tuple([0] * cone.dim)}
        out |= frontier
        for _ in range(bound):
            frontier = {tuple(a + b for a, b in zip(v, h)) for v in frontier for h in hb}
            out |= frontier
    return out


def face_candidates(sup, bound):
    """Candidate m for face certificates, ordered by height."""
    cands = set()
    polys = [c for c in sup.coeffs.values() if c is not None] + [Polyhedron.from_cone(sup.tail)]
    for c in polys:
        for cell in normal_quasifan(c):
            cands |= _cell_candidates(cell.cone, bound)
    return sorted(cands, key=lambda v: (sum(abs(x) for x in v), v))


def _function_candidates(points, bound, field):
    finite = [p for p in points if p not in (INF, PT)]
    out = []
    for exps in product(range(-bound, bound + 1), repeat=len(finite)):
        if sum(abs(e) for e in exps) > bound:
            continue
        out.append(RationalFunction(field.one(), {p: e for p, e in zip(finite, exps) if e}))
    out.sort(key=lambda f: (sum(abs(e) for e in f.factors.values()), repr(f)))
    return out


def search_face(sub, sup, bound=None):
    """Bounded search for a face certificate; None means not found within the bound."""
    bound = default_bound() if bound is None else bound
    if sub.base != sup.base or not _contained(sub, sup):
        return None
    loc_sup = locus(sup)
    removed_sub = set(sub.empty_points()) | set(sub.base.removed)
    removed_sup = set(sup.empty_points()) | set(sup.base.removed)
    target = frozenset(removed_sub - removed_sup)
    pts = sorted(set(sub.coeffs) | set(sup.coeffs), key=point_key)
    fpoints = sorted(set(pts) | set(target), key=point_key)
    functions = (_function_candidates(fpoints, bound, sup.base.field) if not sup.base.is_point()
                 else [RationalFunction.one(sup.base.field)])
    sub_tail = Polyhedron.from_cone(sub.tail)
    sup_tail = Polyhedron.from_cone(sup.tail)
    found = []  # (m, f, Z)
    for m in face_candidates(sup, bound):
        if face_by(sub_tail, m) != face_by(sup_tail, m):
            continue
        need = set(target)
        for p in pts:
            if not loc_sup.contains(p) or p in target:
                continue
            a, b = sub.coeff(p), sup.coeff(p)
            if a.empty or face_by(a, m) != face_by(b, m):
                need.add(p)
        ev = evaluate(sup, m)
        seen = set()
        for f in functions:
            if not section_membership(f, ev, loc_sup):
                continue
            Z = _zero_set(f, ev, loc_sup)
            if not need <= Z or Z in seen:
                continue
            if any(Z2 <= Z for _, _, Z2 in found):
                seen.add(Z)
                continue
            seen.add(Z)
            found.append((m, f, Z))
            if Z == target:
                cert = FaceCertificate([(m, f)])
                v = verify_face(sub, sup, cert)
                if v.ok:
                    return cert
    # greedy cover: shrink the common zero set down to the target
    chosen = []
    current = None
    while current is None or current != target:
        best = None
        for m, f, Z in found:
            nxt = Z if current is None else current & Z
            if current is not None and nxt == current:
                continue
            if best is None or len(nxt) < len(best[2]):
                best = (m, f, nxt)
        if best is None:
            return None
        chosen.append((best[0], best[1]))
        current = best[2]
    cert = FaceCertificate(chosen)
    return cert if verify_face(sub, sup, cert).ok else None


# ---------------------------------------------------------------------------
# fibres, weighted sums, intersections


def fiber_polyhedron(d, y):
    if not locus(d).contains(y):
        raise OutsideLocus(f"{point_str(y)} is not in the locus")
    return d.coeff(y)


def weighted_sum(d, weights):
    """sum mu(p) Delta_p; weight 0 contributes the tail, an empty coefficient with positive weight gives the empty set."""
    acc = Polyhedron.from_cone(d.tail)
    for p, w in sorted(weights.items(), key=lambda kv: point_key(kv[0])):
        w = Fraction(w)
        if w < 0:
            raise ValueError("weights must be nonnegative")
        if w == 0:
            continue
        c = d.coeff(p)
        if c.empty:
            return Polyhedron.empty_set(d.rank, d.tail)
        acc = minkowski_sum(acc, c.dilate(w))
    return acc


def intersect_ppdivisors(a, b, name=None):
    if a.base != b.base:
        raise BaseMismatch("pp-divisors over different bases")
    if a.rank != b.rank:
        raise RankMismatch("pp-divisors of different rank")
    tail = a.tail.intersect(b.tail)
    coeffs = {}
    for p in set(a.coeffs) | set(b.coeffs):
        c = intersect(a.coeff(p), b.coeff(p))
        coeffs[p] = None if c.empty else c
    return PPDivisor(a.base, tail, coeffs, name)
