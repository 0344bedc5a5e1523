from fractions import Fraction as Fr

import pytest

from divfan.base import INF, BaseVariety, Plurifunction, QDivisor, RationalFunction
from divfan.document import library
from divfan.errors import EmptyLocus, NotASection, OutsideDualCone, TailViolation
from divfan.exact import QQ
from divfan.fixtures import HALF_NEG, HALF_POS, Q1, fr_fan, fr_members
from divfan.polyhedral import Cone, Polyhedron
from divfan.ppdivisor import (FaceCertificate, PPDivisor, PPDMorphism, check_proper,
                              compose_morphisms, evaluate, fiber_polyhedron, intersect_ppdivisors,
                              localization_identity_check, localize, pullback, pushforward,
                              search_face, toric, verify_face, verify_morphism, weighted_sum)

P1 = BaseVariety.projective_line(QQ)
PT = BaseVariety.point_base(QQ)
Z = QQ.element(0)
t = RationalFunction.monomial(QQ)
D1, D2, D3, D4 = fr_members(1)


def test_evaluation():
    assert evaluate(D2, (1,)) == QDivisor({INF: Fr(-1, 2)})
    assert evaluate(D1, (1,)) == QDivisor({Z: 1})
    for d in (D1, D2, D3, D4):
        assert evaluate(d, (0,)).is_zero()
    with pytest.raises(OutsideDualCone):
        evaluate(D1, (-1,))


def test_locus():
    assert D2.locus() == P1.remove([0])
    assert D1.locus() == P1
    with pytest.raises(EmptyLocus):
        PPDivisor(PT, Q1, {"pt": None})


def test_tail_must_match():
    with pytest.raises(TailViolation):
        PPDivisor(P1, HALF_POS, {Z: Polyhedron.interval(0, 1)})


def test_properness():
    for d in (D1, D2, D3, D4):
        assert check_proper(d).ok, d.name
    bad = PPDivisor(P1, HALF_POS, {Z: Polyhedron.interval(-1, None)})
    v = check_proper(bad)
    assert not v.ok and v.witness["m"] == [1]
    assert check_proper(toric(Q1)).ok


def test_localization_examples():
    quad = toric(Q1)
    loc = localize(quad, (0, 1), RationalFunction.one())
    assert loc.tail == Cone.from_rays([(1, 0)]) and loc.base.is_point()
    loc1 = localize(D1, (1,), t.inverse())
    assert loc1.tail.is_zero
    assert loc1.coeffs == {Z: Polyhedron.point((1,)), INF: None}
    assert localize(D1, (0,), RationalFunction.one()) == D1
    with pytest.raises(NotASection):
        localize(D1, (1,), t)


def test_localization_identity():
    v = localization_identity_check(D1, (1,), t.inverse(), (-1,))
    assert v.ok and v.details["k"] == 1
    assert localization_identity_check(D1, (1,), t.inverse(), (0,)).ok


def test_pullback_and_pushforward():
    from divfan.base import SemilinearBaseMap
    assert pullback(D1, SemilinearBaseMap.identity(QQ)) == D1
    zero = pushforward(D1, ((0,),), HALF_POS)
    assert all(c is None or c.is_tail() for c in zero.coeffs.values())
    neg = pushforward(D1, ((-1,),), HALF_NEG)
    assert neg.coeffs == {Z: Polyhedron.interval(None, -1)}


def test_morphisms():
    ident = PPDMorphism.identity(D1)
    assert verify_morphism(D1, D1, ident).ok
    fan = fr_fan(1)
    for (sub, sup) in fan.edges:
        assert verify_morphism(fan[sub], fan[sup], PPDMorphism.identity(fan[sub])).ok
    bad = PPDMorphism(ident.psi, ident.F, Plurifunction(1, [((-1,), t)]))
    v = verify_morphism(D1, D1, bad)
    assert not v.ok and v.witness["point"] == "0"


def test_composition():
    ident = PPDMorphism.identity(D1)
    assert compose_morphisms(ident, ident) == ident


def test_galois_pair_composes_to_linear_automorphism():
    doc = library()
    act = doc.action("p1_conic")
    g = act.elements["c1"].triple()
    gg = compose_morphisms(g, g)
    assert gg.psi.twist.is_identity()
    assert gg.F == ((1,),)
    assert gg == act.elements["c0"].triple()


def test_face_certificates():
    quad = toric(Q1)
    ray = toric(Cone.from_rays([(1, 0)]))
    assert verify_face(ray, quad, FaceCertificate([((0, 1), RationalFunction.one())])).ok
    assert verify_face(D1, D1, FaceCertificate([((0,), RationalFunction.one())])).ok
    assert search_face(D1, D1).witnesses == [((0,), RationalFunction.one())]


def test_face_on_affine_line_matches_search():
    A1 = P1.remove([INF])
    sup = PPDivisor(A1, Cone.zero(1), {Z: Polyhedron.interval(0, 1)}, "sup")
    sub = PPDivisor(A1, Cone.zero(1), {Z: Polyhedron.point((1,))}, "sub")
    cert = FaceCertificate([((-1,), t)])
    assert verify_face(sub, sup, cert).ok
    found = search_face(sub, sup, 4)
    assert found is not None and verify_face(sub, sup, found).ok
    # on the complete line D(-1) = -{0} has no sections, so there is no certificate
    supc = PPDivisor(P1, Cone.zero(1), {Z: Polyhedron.interval(0, 1)}, "sup")
    subc = PPDivisor(P1, Cone.zero(1), {Z: Polyhedron.point((1,))}, "sub")
    assert search_face(subc, supc, 4) is None
    assert not verify_face(subc, supc, cert).ok


def test_f1_edges_certified_at_bound_three():
    fan = fr_fan(1)
    for sub, sup in fan.edges:
        cert = search_face(fan[sub], fan[sup], 3)
        assert cert is not None and verify_face(fan[sub], fan[sup], cert).ok


def test_smaller_locus_without_section():
    sup = PPDivisor(P1, Cone.zero(1), {Z: Polyhedron.interval(0, 1)})
    sub = PPDivisor(P1, Cone.zero(1), {Z: Polyhedron.interval(0, 1), 5: None})
    assert search_face(sub, sup, 3) is None


def test_fibers_and_weighted_sums():
    assert fiber_polyhedron(D1, Z) == Polyhedron.interval(1, None)
    assert fiber_polyhedron(D1, QQ.element(7)) == Polyhedron.from_cone(HALF_POS)
    assert weighted_sum(D1, {Z: 2}) == Polyhedron.interval(2, None)
    assert weighted_sum(D1, {Z: 0}) == Polyhedron.from_cone(HALF_POS)
    assert weighted_sum(D2, {Z: 1}).empty


def test_intersections():
    d12 = intersect_ppdivisors(D1, D2)
    assert d12.tail.is_zero
    assert d12.coeffs == {Z: None}
    assert intersect_ppdivisors(D1, D1) == D1
    a = PPDivisor(P1, Cone.zero(1), {Z: Polyhedron.interval(0, 1)})
    b = PPDivisor(P1, Cone.zero(1), {Z: Polyhedron.interval(2, 3)})
    ab = intersect_ppdivisors(a, b)
    assert ab.coeffs == {Z: None} and ab.locus() == P1.remove([0])
