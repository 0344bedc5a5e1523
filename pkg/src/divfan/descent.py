"""Semilinear fan morphisms, Galois actions, orbit fans and descent checks."""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .base import Plurifunction, SemilinearBaseMap, point_key
from .errors import NotAHomomorphism, RankBudgetExceeded, SizeBudgetExceeded
from .exact import FiniteGroup, verify_group_presentation
from .fan import (DivisorialFan, closure_generate, cone_faces, gluing_poset,
                  quasiprojectivity_check, toric_fan_as_divisorial)
from .polyhedral import (Cone, cone_face_test, det, identity_matrix, mat_inverse, mat_mul,
                         mat_vec, rank)
from .ppdivisor import PPDMorphism, compose_morphisms, transport, verify_morphism
from .verdict import Verdict

AUT_RANK_BUDGET = 3
AUT_RAY_BUDGET = 24
HOM_ORDER_BUDGET = 24


# ---------------------------------------------------------------------------
# toric fans and their automorphisms


class ToricFan:
    """A fan given by its cones; faces are added on construction."""

    def __init__(self, rank, cones, name=None):
        self.rank = rank
        self.name = name
        allc = set()
        for c in cones:
            if c.dim != rank:
                raise ValueError("cone of the wrong rank")
            allc |= cone_faces(c)
        self.cones = sorted(allc, key=lambda c: (c.dimension, c.rays))
        for i, a in enumerate(self.cones):
            for b in self.cones[i + 1:]:
                c = a.intersect(b)
                if cone_face_test(c, a) is None or cone_face_test(c, b) is None:
                    from .errors import NotAFan
                    raise NotAFan(f"{a!r} and {b!r} do not meet in a common face")

    @classmethod
    def from_rays(cls, rank, rays, cones, name=None):
        """Cones given as lists of ray indices."""
        return cls(rank, [Cone.from_rays([rays[i] for i in c], rank) for c in cones], name)

    @property
    def rays(self):
        return sorted({c.rays[0] for c in self.cones if c.dimension == 1})

    def maximal(self):
        return [c for c in self.cones if not any(d != c and d.contains_cone(c) for d in self.cones)]

    def to_json(self):
        rays = self.rays
        return {"rank": self.rank, "rays": [list(r) for r in rays],
                "cones": [[rays.index(r) for r in c.rays] for c in self.maximal()]}

    def __repr__(self):
        return f"ToricFan(rank={self.rank}, {len(self.maximal())} maximal cones)"


def _cone_image(c, F):
    return Cone.from_rays([mat_vec(F, r) for r in c.rays], c.dim)


def preserves_fan(sigma, F):
    cones = set(sigma.cones)
    return all(_cone_image(c, F) in cones for c in sigma.maximal())


def fan_automorphism_group(sigma):
    """All unimodular F permuting the cones, as matrices plus a group table."""
    n = sigma.rank
    if n > AUT_RANK_BUDGET:
        raise RankBudgetExceeded(f"automorphisms in rank {n} exceed {AUT_RANK_BUDGET}")
    rays = sigma.rays
    if len(rays) > AUT_RAY_BUDGET:
        raise RankBudgetExceeded(f"{len(rays)} rays exceed {AUT_RAY_BUDGET}")
    basis = []
    for r in rays:
        if rank(basis + [r]) > len(basis):
            basis.append(r)
    if len(basis) < n:
        raise ValueError("rays do not span the lattice")
    Binv = mat_inverse(tuple(tuple(col) for col in zip(*basis)))  # columns are basis rays
    ray_set = set(rays)
    found = []
    for images in permutations(rays, n):
        img = tuple(tuple(col) for col in zip(*images))
        F = mat_mul(img, Binv)
        if any(Fraction(x).denominator != 1 for row in F for x in row):
            continue
        F = tuple(tuple(int(x) for x in row) for row in F)
        if abs(det(F)) != 1:
            continue
        if {mat_vec(F, r) for r in rays} != ray_set:
            continue
        if preserves_fan(sigma, F) and F not in found:
            found.append(F)
    ident = identity_matrix(n)
    found.sort(key=lambda F: (F != ident, F))
    labels = {F: ("e" if F == ident else f"a{i}") for i, F in enumerate(found)}
    table = {labels[A]: {labels[B]: labels[mat_mul(A, B)] for B in found} for A in found}
    group = FiniteGroup([labels[F] for F in found], table, identity="e")
    return [labels[F] for F in found], {labels[F]: F for F in found}, group


def enumerate_homomorphisms(group, target, mul, identity):
    """All homomorphisms from a finite group into a target given as a dict label -> object."""
    if group.order > HOM_ORDER_BUDGET:
        raise SizeBudgetExceeded(f"group order {group.order} exceeds {HOM_ORDER_BUDGET}")
    gens = group.generators()
    targets = list(target.values())
    out = []

    def extend(images):
        hom = {group.identity: identity}
        frontier = [group.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g, img in zip(gens, images):
                    y = group.mul(x, g)
                    val = mul(hom[x], img)
                    if y in hom:
                        if hom[y] != val:
                            return None
                    else:
                        hom[y] = val
                        nxt.append(y)
            frontier = nxt
        for a in group.elements:
            for b in group.elements:
                if hom[group.mul(a, b)] != mul(hom[a], hom[b]):
                    return None
        return hom

    def rec(k, images):
        if k == len(gens):
            h = extend(images)
            if h is not None and h not in out:
                out.append(h)
            return
        for t in targets:
            rec(k + 1, images + [t])

    rec(0, [])
    return out


def is_homomorphism(group, hom, mul):
    for a in group.elements:
        for b in group.elements:
            if hom[group.mul(a, b)] != mul(hom[a], hom[b]):
                return False
    return True


# ---------------------------------------------------------------------------
# semilinear morphisms and actions


def restrict_plurifunction(pf, d):
    """Terms whose function divisor lies on the coefficient points of d."""
    pts = set(d.coeffs)
    keep = []
    for v, f in pf.terms:
        if f.is_constant():
            continue
        if set(f.divisor().terms) <= pts:
            keep.append((v, f))
    return Plurifunction(pf.rank, keep, pf.field)


class SemilinearFanMorphism:
    """g = (psi, F, f) together with the member it sends each member to."""

    def __init__(self, gamma, psi, F, plurifn, assignment):
        self.gamma = gamma
        self.psi = psi
        self.F = tuple(tuple(int(x) for x in row) for row in F)
        self.plurifn = plurifn
        self.assignment = dict(assignment)

    def triple(self):
        return PPDMorphism(self.psi, self.F, self.plurifn)

    def restricted(self, d):
        return PPDMorphism(self.psi, self.F, restrict_plurifunction(self.plurifn, d))

    def __repr__(self):
        return f"SemilinearFanMorphism({self.gamma}, {self.psi!r}, F={[list(r) for r in self.F]})"


def complete_assignment(s, g):
    """Fill in the targets of members the assignment leaves out, by transport."""
    out = dict(g.assignment)
    for d in s:
        if d.name in out:
            continue
        image = transport(d, g.restricted(d))
        name = s.find(image)
        if name is not None:
            out[d.name] = name
    return out


def verify_semilinear_fan_morphism(s, g, poset=None):
    assignment = complete_assignment(s, g)
    for d in s:
        if d.name not in assignment:
            return Verdict.no({"member": d.name}, reason="no member matches the transported chart")
        tname = assignment[d.name]
        if tname not in s.members:
            return Verdict.no({"member": d.name, "target": tname}, reason="unknown target")
        target = s[tname]
        phi = g.restricted(d)
        v = verify_morphism(d, target, phi)
        if not v.ok:
            return Verdict.no({"member": d.name, "target": tname, "detail": v.witness},
                              reason="not a morphism")
        try:
            back = phi.inverse()
        except ValueError:
            return Verdict.no({"member": d.name}, reason="lattice map not invertible")
        v = verify_morphism(target, d, back)
        if not v.ok:
            return Verdict.no({"member": d.name, "target": tname, "detail": v.witness},
                              reason="inverse is not a morphism")
    poset = poset or gluing_poset(s)
    for sub, sup in s.edges:
        a, b = assignment[sub], assignment[sup]
        if (a, b) not in poset.arrows:
            return Verdict.no({"edge": [sub, sup], "image": [a, b]}, reason="faces not preserved")
    return Verdict.yes(assignment=assignment)


@dataclass
class GaloisFanAction:
    group: FiniteGroup
    elements: dict  # label -> SemilinearFanMorphism
    field: object = None
    name: str = None


def _identity_like(s, g):
    one = g.psi.is_identity() and g.F == identity_matrix(len(g.F)) and g.plurifn.is_trivial()
    return one and all(g.assignment.get(n, n) == n for n in s.names())


def verify_galois_action(s, act):
    """Group law, identity, morphisms, composition and the plurifunction cocycle."""
    gv = verify_group_presentation(act.group)
    if not gv.ok:
        return Verdict.no({"check": "group", "detail": gv.witness})
    G = act.group
    missing = [x for x in G.elements if x not in act.elements]
    if missing:
        return Verdict.no({"check": "elements", "missing": missing})
    if not _identity_like(s, act.elements[G.identity]):
        return Verdict.no({"check": "identity", "element": G.identity})
    poset = gluing_poset(s)
    assignments = {}
    for x in G.elements:
        g = act.elements[x]
        v = verify_semilinear_fan_morphism(s, g, poset)
        if not v.ok:
            return Verdict.no({"check": "morphism", "element": x, "detail": v.witness},
                              reason=v.details.get("reason"))
        assignments[x] = v.details["assignment"]
    for x in G.elements:
        for y in G.elements:
            gx, gy, gxy = act.elements[x], act.elements[y], act.elements[G.mul(x, y)]
            if gx.psi.twist.compose(gy.psi.twist) != gxy.psi.twist:
                return Verdict.no({"check": "section", "pair": [x, y]})
            comp = compose_morphisms(gx.triple(), gy.triple())
            if comp.psi != gxy.psi or comp.F != gxy.F:
                return Verdict.no({"check": "composition", "pair": [x, y]})
            if comp.plurifn != gxy.plurifn:
                return Verdict.no({"check": "cocycle", "pair": [x, y]})
            for n in s.names():
                if assignments[x][assignments[y][n]] != assignments[G.mul(x, y)][n]:
                    return Verdict.no({"check": "assignment", "pair": [x, y], "member": n})
    return Verdict.yes(order=G.order)


def translates(d, morphisms):
    """Distinct transports of a pp-divisor along a list of triples."""
    out = []
    for k, g in enumerate(morphisms):
        phi = g if isinstance(g, PPDMorphism) else g.restricted(d)
        t = transport(d, phi)
        if not any(t == e for e in out):
            out.append(t.with_name(f"{d.name}@{k}"))
    return out


def orbit_subfan(s, act, member, bound=None, jobs=1):
    """Smallest divisorial fan containing all translates of a member."""
    d = s[member]
    if isinstance(act, GaloisFanAction):
        seed = []
        for x in act.group.elements:
            t = transport(d, act.elements[x].restricted(d))
            name = s.find(t)
            t = s[name] if name is not None else t.with_name(f"{member}@{x}")
            if not any(t == e for e in seed):
                seed.append(t)
    else:
        seed = translates(d, act)
    seed.sort(key=lambda e: e.name)
    return closure_generate(seed, bound, jobs)


def pairwise_maximal(pps):
    """Members of a list not contained in another member."""
    from .fan import _ppd_contains
    return [d for d in pps if not any(e is not d and e != d and _ppd_contains(e, d) for e in pps)]


# ---------------------------------------------------------------------------
# descent


@dataclass
class DescentReport:
    stable: bool
    orbit_results: list = field(default_factory=list)
    conclusion: bool = False
    details: dict = field(default_factory=dict)

    def to_json(self):
        return {"stable": self.stable, "orbit_results": self.orbit_results,
                "conclusion": self.conclusion, **self.details}


def toric_descent_check(sigma, group, hom, solver="simplex"):
    """Quasi-projectivity of the orbit fan of every cone under a homomorphism into Aut(sigma)."""
    for x in group.elements:
        F = hom.get(x)
        if F is None or abs(det(F)) != 1 or not preserves_fan(sigma, F):
            raise NotAHomomorphism(f"image of {x} is not a fan automorphism")
    if not is_homomorphism(group, hom, mat_mul):
        raise NotAHomomorphism("images do not respect the group law")
    results = []
    cache = {}
    for c in sigma.cones:
        orbit = sorted({_cone_image(c, hom[x]) for x in group.elements}, key=lambda k: k.rays)
        key = tuple(orbit)
        if key not in cache:
            faces = set()
            for o in orbit:
                faces |= cone_faces(o)
            fan = toric_fan_as_divisorial(faces)
            cache[key] = quasiprojectivity_check(fan, solver=solver)
        v = cache[key]
        results.append({"cone": c.to_json(), "orbit_size": len(orbit), "quasi_projective": v.ok,
                        "witness": v.witness})
    return DescentReport(True, results, all(r["quasi_projective"] for r in results),
                         {"homomorphism": {x: [list(r) for r in hom[x]] for x in group.elements}})


def tvariety_descent_check(s, act, bound=None, solver="simplex"):
    v = verify_galois_action(s, act)
    if not v.ok:
        return DescentReport(False, [], False, {"action": v.witness})
    results = []
    for d in s.maximal_members():
        sub = orbit_subfan(s, act, d.name, bound)
        q = quasiprojectivity_check(sub, solver=solver)
        results.append({"member": d.name, "orbit_size": len(sub),
                        "maximal": len(sub.maximal_members()), "quasi_projective": q.ok,
                        "witness": q.witness})
    return DescentReport(True, results, all(r["quasi_projective"] for r in results))
