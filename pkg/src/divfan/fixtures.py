"""Worked examples as Python builders.

Every object here is also written to ``data/library.json`` by
``python -m divfan.fixtures``; the CLI reads the JSON copy.
"""

from fractions import Fraction

from .base import INF, BaseVariety, Plurifunction, RationalFunction, SemilinearBaseMap
from .descent import GaloisFanAction, SemilinearFanMorphism, ToricFan, translates
from .exact import QQ, QQ_I, conjugation, cyclic_group, group_from_generators
from .fan import DivisorialFan, closure_generate, toric_fan_as_divisorial
from .polyhedral import Cone, Polyhedron, identity_matrix
from .ppdivisor import PPDMorphism, PPDivisor

Q1 = Cone.from_rays([(1, 0), (0, 1)])
Q2 = Cone.from_rays([(-1, 0), (0, 1)])
Q3 = Cone.from_rays([(-1, 0), (0, -1)])
Q4 = Cone.from_rays([(1, 0), (0, -1)])
HALF_POS = Cone.from_rays([(1,)])
HALF_NEG = Cone.from_rays([(-1,)])

# conjugating Mobius map: sends 0 and inf to 2 and 4, whose octahedral orbits are free and disjoint
S4_CONJUGATOR = ((4, 2), (1, 1))


# ---------------------------------------------------------------------------
# toric fans


def hirzebruch_toric(r):
    rays = [(1, 0), (0, 1), (-1, r), (0, -1)]
    return ToricFan.from_rays(2, rays, [(0, 1), (1, 2), (2, 3), (3, 0)], f"hirzebruch_r{r}")


def p1_toric():
    return ToricFan.from_rays(1, [(1,), (-1,)], [(0,), (1,)], "p1")


def prism_rays():
    ps = [(1, 0), (0, 1), (-1, -1)]
    top = [(x, y, 1) for x, y in ps]
    bottom = [(x, y, -1) for x, y in ps]
    return top + bottom


def prism_toric():
    """Complete simplicial fan over a triangular prism with twisted side diagonals; not projective."""
    cones = [(0, 1, 2), (3, 4, 5)]
    for i in range(3):
        j = (i + 1) % 3
        # quad t_i t_j b_j b_i split along t_i - b_j
        cones += [(i, j, 3 + j), (i, 3 + i, 3 + j)]
    return ToricFan.from_rays(3, prism_rays(), cones, "prism")


PRISM_ROTATION = ((0, -1, 0), (1, -1, 0), (0, 0, 1))


def prism_rotation_hom():
    """C3 acting on the prism fan by rotating the base triangle."""
    g = cyclic_group(3)
    R = PRISM_ROTATION
    from .polyhedral import mat_mul
    return g, {"c0": identity_matrix(3), "c1": R, "c2": mat_mul(R, R)}


# ---------------------------------------------------------------------------
# complexity one


def fr_members(r, field=QQ, suffix=""):
    """The four generating charts of the Hirzebruch surface F_r over P^1.

    The fourth chart carries the empty coefficient at infinity, not at zero.
    """
    B = BaseVariety.projective_line(field)
    zero, inf = field.zero(), INF
    a = Fraction(-1, r + 1)
    return [
        PPDivisor(B, HALF_POS, {zero: Polyhedron.interval(1, None)}, f"D_omega1_r{r}{suffix}"),
        PPDivisor(B, Cone.zero(1), {zero: None, inf: Polyhedron.interval(a, 0)}, f"D_omega2_r{r}{suffix}"),
        PPDivisor(B, HALF_NEG, {inf: Polyhedron.interval(None, a)}, f"D_omega3_r{r}{suffix}"),
        PPDivisor(B, Cone.zero(1), {zero: Polyhedron.interval(0, 1), inf: None}, f"D_omega4_r{r}{suffix}"),
    ]


def fr_fan(r, field=QQ, bound=None, jobs=1, suffix=""):
    fan = closure_generate(fr_members(r, field, suffix), bound, jobs)
    fan.name = f"F{r}"
    return fan


def p3_members(field=QQ_I):
    """Charts x_i != 0 of P^3 under (l, m).x = [l x0 : m x1 : l m x2 : x3], quotient t = x0 x1 / (x2 x3)."""
    B = BaseVariety.projective_line(field)
    zero = field.zero()
    edge = [(-1, -1), (0, 0)]
    diag = [(1, 0), (0, 1)]

    def P(vs, tail):
        return Polyhedron.from_generators(vs, tail=tail)

    return [
        PPDivisor(B, Q2, {zero: P([(0, 1)], Q2), INF: P(edge, Q2)}, "P3_D0"),
        PPDivisor(B, Q4, {zero: P([(1, 0)], Q4), INF: P(edge, Q4)}, "P3_D1"),
        PPDivisor(B, Q3, {zero: P(diag, Q3), INF: P([(-1, -1)], Q3)}, "P3_D2"),
        PPDivisor(B, Q1, {zero: P(diag, Q1)}, "P3_D3"),
    ]


def p3_fan(bound=None, jobs=1):
    fan = closure_generate(p3_members(), bound, jobs)
    fan.name = "P3"
    return fan


def _c2_action(s, field, F, pf, assignment, name, point_base=False):
    G = cyclic_group(2)
    rank = len(F)
    e = SemilinearFanMorphism("c0", SemilinearBaseMap.identity(field, point_base),
                              identity_matrix(rank), Plurifunction.one(rank, field),
                              {n: n for n in s.names()})
    if point_base:
        psi = SemilinearBaseMap(field, None, conjugation(field))
    else:
        one, z = field.one(), field.zero()
        psi = SemilinearBaseMap(field, ((one, z), (z, one)), conjugation(field))
    g = SemilinearFanMorphism("c1", psi, F, pf, assignment)
    return GaloisFanAction(G, {"c0": e, "c1": g}, field, name)


P3_LITERAL_F = ((0, -1), (-1, 0))


def p3_actions(s):
    """C2 actions on the P^3 fan over Q(i).

    ``p3_swap`` is the action induced by x0 <-> x1; ``p3_literal`` uses the
    matrix (a, b) -> (-b, -a) and ``p3_minus_id`` uses -id with (1, 1) (x) t.
    Both of the latter fail verification.
    """
    F = QQ_I
    t = RationalFunction.monomial(F)
    swap = {"P3_D0": "P3_D1", "P3_D1": "P3_D0", "P3_D2": "P3_D3", "P3_D3": "P3_D2"}
    fix23 = {"P3_D0": "P3_D1", "P3_D1": "P3_D0", "P3_D2": "P3_D2", "P3_D3": "P3_D3"}
    return {
        "p3_literal": _c2_action(s, F, P3_LITERAL_F, Plurifunction.one(2, F), swap, "p3_literal"),
        "p3_minus_id": _c2_action(s, F, ((-1, 0), (0, -1)), Plurifunction(2, [((1, 1), t)], F),
                                  swap, "p3_minus_id"),
        "p3_swap": _c2_action(s, F, ((0, 1), (1, 0)), Plurifunction.one(2, F), fix23, "p3_swap"),
    }


def a1p1_s1(field=QQ):
    """A^1 x P^1 with the covering by P^1 minus 0 and P^1 minus inf."""
    B = BaseVariety.projective_line(field)
    zero = field.zero()
    D = Polyhedron.interval(1, None)
    fan = closure_generate([
        PPDivisor(B, HALF_POS, {zero: None, INF: D}, "S1_a"),
        PPDivisor(B, HALF_POS, {zero: D, INF: None}, "S1_b"),
        PPDivisor(B, HALF_POS, {zero: None, INF: None}, "S1_c"),
    ])
    fan.name = "a1p1_S1"
    return fan


def nonseparated_pair(field=QQ, bound=None):
    """Two charts over A^1 glued along a face that cuts opposite ends at 0 and 1."""
    B = BaseVariety.projective_line(field)
    p, q = field.zero(), field.one()
    members = [
        PPDivisor(B, Cone.zero(1), {p: Polyhedron.interval(1, 2), q: Polyhedron.interval(-1, 0),
                                    INF: None}, "NS_a"),
        PPDivisor(B, Cone.zero(1), {p: Polyhedron.interval(0, 1), q: Polyhedron.interval(0, 1),
                                    INF: None}, "NS_b"),
    ]
    fan = closure_generate(members, bound)
    fan.name = "nonseparated"
    return fan


# ---------------------------------------------------------------------------
# P^1 forms


def p1_divfan(field=QQ_I):
    return toric_fan_as_divisorial(p1_toric().cones, field, "p1_")


def p1_actions(field=QQ_I):
    """(gamma, id, 1), (gamma, -id, 1), (gamma, -id, -1)."""
    s = p1_divfan(field)
    pos = next(n for n in s.names() if s[n].tail.rays == ((1,),))
    neg = next(n for n in s.names() if s[n].tail.rays == ((-1,),))
    zero = next(n for n in s.names() if s[n].tail.is_zero)
    fixed = {n: n for n in s.names()}
    swapped = {pos: neg, neg: pos, zero: zero}
    minus_one = Plurifunction(1, [((1,), RationalFunction.const(-1, field))], field)
    return s, {
        "p1_real": _c2_action(s, field, ((1,),), Plurifunction.one(1, field), fixed, "p1_real", True),
        "p1_conic_trivial": _c2_action(s, field, ((-1,),), Plurifunction.one(1, field), swapped,
                                       "p1_conic_trivial", True),
        "p1_conic": _c2_action(s, field, ((-1,),), minus_one, swapped, "p1_conic", True),
    }


def p1_broken_action(field=QQ_I):
    """(gamma, -id, i): the constant i squares to -1, so the cocycle fails at (gamma, gamma)."""
    s = p1_divfan(field)
    act = p1_actions(field)[1]["p1_conic"]
    bad = Plurifunction(1, [((1,), RationalFunction(field.gen()))], field)
    g = act.elements["c1"]
    act.elements["c1"] = SemilinearFanMorphism("c1", g.psi, g.F, bad, g.assignment)
    act.name = "p1_broken"
    return s, act


def trivial_action(s, group=None, field=None):
    """Every element acts by the identity."""
    group = group or cyclic_group(1)
    field = field or s.base.field
    point = s.base.is_point()
    e = {x: SemilinearFanMorphism(x, SemilinearBaseMap.identity(field, point),
                                  identity_matrix(s.rank), Plurifunction.one(s.rank, field),
                                  {n: n for n in s.names()}) for x in group.elements}
    return GaloisFanAction(group, e, field, "trivial")


# ---------------------------------------------------------------------------
# S4 inside PGL_2(Q(i))


def s4_mobius_group(field=QQ_I):
    """Octahedral rotations <z -> iz, z -> (z+1)/(1-z)>, conjugated so 0 and inf have free orbits."""
    i, one, z = field.gen(), field.one(), field.zero()
    a = SemilinearBaseMap(field, ((i, z), (z, one)))
    b = SemilinearBaseMap(field, ((one, one), (-one, one)))
    h = SemilinearBaseMap(field, S4_CONJUGATOR)
    hi = h.inverse()
    gens = [hi.compose(a).compose(h), hi.compose(b).compose(h)]
    return group_from_generators(gens, lambda x, y: x.compose(y),
                                 identity=SemilinearBaseMap.identity(field), prefix="s",
                                 max_order=48)


def s4_translates(r=1, field=QQ_I):
    """All Mobius transports of the four F_r charts; pp-divisor triples (psi, id, 1)."""
    group, maps = s4_mobius_group(field)
    ms = [PPDMorphism(maps[x], identity_matrix(1), Plurifunction.one(1, field))
          for x in group.elements]
    out = []
    for d in fr_members(r, field, "_Qi"):
        out.extend(translates(d, ms))
    return group, out


def s4_transport_action(r=1, field=QQ_I):
    """The S4 Mobius group as triples (psi, id, 1) on the F_r fan over Q(i).

    The fan is not stable under these maps, so assignments are left empty and
    orbits are computed by transport.
    """
    group, maps = s4_mobius_group(field)
    s = fr_fan(r, field, suffix="_Qi")
    s.name = f"F{r}_Qi"
    elements = {x: SemilinearFanMorphism(x, maps[x], identity_matrix(1), Plurifunction.one(1, field), {})
                for x in group.elements}
    return s, GaloisFanAction(group, elements, field, "s4_transport")


def fragmented_prism_action():
    """The prism fan over the point with C3 rotating it; orbit subfans of side charts fail the LP."""
    sigma = prism_toric()
    s = toric_fan_as_divisorial(sigma.cones, QQ, "prism_")
    G, hom = prism_rotation_hom()
    elements = {}
    for x in G.elements:
        F = hom[x]
        assignment = {}
        for d in s:
            img = d.tail.image(F)
            assignment[d.name] = next(n for n in s.names() if s[n].tail == img)
        elements[x] = SemilinearFanMorphism(x, SemilinearBaseMap.identity(QQ, True), F,
                                            Plurifunction.one(3, QQ), assignment)
    return s, GaloisFanAction(G, elements, QQ, "prism_rotation")


# ---------------------------------------------------------------------------
# library


def build_library():
    from .document import Document
    doc = Document()
    for r in (1, 2, 3):
        doc.add_toric(f"hirzebruch_r{r}", hirzebruch_toric(r))
    doc.add_toric("p1", p1_toric())
    doc.add_toric("prism", prism_toric())

    c1, c2, c3 = cyclic_group(1), cyclic_group(2), cyclic_group(3)
    doc.add_group("C1", c1)
    doc.add_group("C2", c2)
    doc.add_group("C3", c3)
    for r in (1, 2, 3):
        F = ((-1, 0), (r, 1))
        doc.add_hom(f"hirzebruch_r{r}_swap", f"hirzebruch_r{r}", "C2",
                    {"c0": identity_matrix(2), "c1": F})
        doc.add_hom(f"hirzebruch_r{r}_trivial", f"hirzebruch_r{r}", "C3",
                    {x: identity_matrix(2) for x in c3.elements})
    doc.add_hom("p1_minus_id", "p1", "C2", {"c0": ((1,),), "c1": ((-1,),)})
    doc.add_hom("p1_id", "p1", "C2", {"c0": ((1,),), "c1": ((1,),)})
    G3, prism_hom = prism_rotation_hom()
    doc.add_hom("prism_rotation", "prism", "C3", prism_hom)

    for r in (1, 2, 3):
        f = fr_fan(r, bound=max(4, r + 2))
        doc.add_fan(f"F{r}", f)
        doc.add_action(f"F{r}_trivial", f"F{r}", "C2", trivial_action(f, c2))
    s = p3_fan()
    doc.add_fan("P3", s)
    for name, act in p3_actions(s).items():
        doc.add_action(name, "P3", "C2", act)
    doc.add_fan("a1p1_S1", a1p1_s1())
    doc.add_fan("nonseparated", nonseparated_pair())
    sp, acts = p1_actions()
    doc.add_fan("p1_fan", sp)
    for name, act in acts.items():
        doc.add_action(name, "p1_fan", "C2", act)
    doc.add_action("p1_broken", "p1_fan", "C2", p1_broken_action()[1])
    sprism, aprism = fragmented_prism_action()
    doc.add_fan("prism_fan", sprism)
    doc.add_action("prism_rotation", "prism_fan", "C3", aprism)
    s4fan, s4act = s4_transport_action(1)
    doc.add_fan("F1_Qi", s4fan)
    doc.add_group("S4", s4act.group)
    doc.add_action("s4_transport", "F1_Qi", "S4", s4act)
    return doc


def main():
    from pathlib import Path
    path = Path(__file__).with_name("data") / "library.json"
    path.parent.mkdir(exist_ok=True)
    build_library().dump(path)
    print(path)


if __name__ == "__main__":
    main()
