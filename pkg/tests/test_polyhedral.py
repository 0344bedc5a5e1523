from fractions import Fraction as Fr
from itertools import product

import pytest
from hypothesis import given, strategies as st

from divfan.errors import EmptyPolyhedron, FaceUnbounded, NonPointed, RankBudgetExceeded
from divfan.polyhedral import (NEG_INF, Cone, Polyhedron, cone_face_test, dot, dual_cone, face_by,
                               hilbert_basis, intersect, is_face_of, membership, minkowski_sum,
                               normal_quasifan, support_value)

QUAD = Cone.from_rays([(1, 0), (0, 1)])
Q2 = Cone.from_rays([(-1, 0), (0, 1)])
SIMPLEX = Polyhedron.from_generators([(1, 0), (0, 1)])
D = Polyhedron.from_generators([(1, 0), (0, 1)], tail=QUAD)

coords = st.integers(-4, 4)
vec2 = st.tuples(coords, coords)


def test_minkowski_figure_region():
    d = minkowski_sum(SIMPLEX, Polyhedron.from_cone(QUAD))
    assert d == D
    assert sorted(d.vertices) == [(0, 1), (1, 0)]
    assert d.tail == QUAD
    # the region is {x >= 0, y >= 0, x + y >= 1}
    for p in product(range(-2, 4), repeat=2):
        assert d.contains_point(p) == (p[0] >= 0 and p[1] >= 0 and sum(p) >= 1)


def test_minkowski_identity_and_empty():
    assert minkowski_sum(D, Polyhedron.point((0, 0))) == D
    assert minkowski_sum(Polyhedron.empty_set(2), D).empty


def test_support_values():
    assert support_value(D, (1, 1)) == 1
    assert support_value(D, (1, 0)) == 0
    assert support_value(D, (-1, 0)) is NEG_INF


def test_support_of_empty_raises():
    with pytest.raises(EmptyPolyhedron):
        support_value(Polyhedron.empty_set(2), (1, 0))


def test_faces():
    f = face_by(D, (1, 1))
    assert f == SIMPLEX and f.tail.is_zero
    assert face_by(D, (0, 0)) == D
    ray = Polyhedron.interval(1, None)
    assert face_by(ray, (1,)) == Polyhedron.point((1,))
    with pytest.raises(FaceUnbounded):
        face_by(ray, (-1,))


def test_intersections():
    assert intersect(Polyhedron.interval(0, 1), Polyhedron.interval(1, 2)) == Polyhedron.point((1,))
    assert intersect(D, D) == D
    assert QUAD.intersect(Q2) == Cone.from_rays([(0, 1)])


@given(st.lists(vec2, min_size=1, max_size=4), st.lists(vec2, min_size=1, max_size=4), vec2)
def test_intersection_membership(va, vb, p):
    a, b = Polyhedron.from_generators(va), Polyhedron.from_generators(vb)
    c = intersect(a, b)
    inside = a.contains_point(p) and b.contains_point(p)
    assert (not c.empty and c.contains_point(p)) == inside


def test_duals():
    assert dual_cone(QUAD) == QUAD
    full = dual_cone(Cone.zero(2))
    assert not full.pointed and full.contains((5, -7))
    assert dual_cone(Cone.from_rays([(1, 0), (1, 2)])) == Cone.from_rays([(0, 1), (2, -1)])


@given(st.lists(vec2, min_size=1, max_size=3), vec2)
def test_dual_pairs_nonnegatively(rays, m):
    rays = [r for r in rays if any(r)]
    c = Cone.from_rays(rays, 2)
    assert dual_cone(c).contains(m) == all(dot(m, r) >= 0 for r in rays)


def test_membership_modes():
    assert membership(QUAD, (1, 1), "relint")
    assert not membership(QUAD, (1, 0), "relint")
    assert membership(QUAD, (1, 0), "boundary")
    assert membership(D, (Fr(1, 2), Fr(1, 2)))


def test_cone_face_test():
    m = cone_face_test(Cone.from_rays([(1, 0)]), QUAD)
    assert m is not None and dot(m, (1, 0)) == 0 and dot(m, (0, 1)) > 0
    assert cone_face_test(QUAD, QUAD) == (0, 0)
    assert cone_face_test(Cone.from_rays([(1, 1)]), QUAD) is None


def test_is_face_of():
    assert is_face_of(SIMPLEX, D)
    assert not is_face_of(Polyhedron.point((Fr(1, 2), Fr(1, 2))), D)


def test_quasifan_cells():
    cells = normal_quasifan(D)
    assert len(cells) == 2
    by_vertex = {c.linear_form: c.cone for c in cells}
    assert by_vertex[(0, 1)] == Cone.from_rays([(1, 0), (1, 1)])
    assert by_vertex[(1, 0)] == Cone.from_rays([(0, 1), (1, 1)])
    point = normal_quasifan(Polyhedron.from_generators([(2, 3)], tail=QUAD))
    assert len(point) == 1 and point[0].cone == QUAD
    seg = {c.linear_form: c.cone for c in normal_quasifan(Polyhedron.interval(0, 1))}
    assert seg[(0,)] == Cone.from_rays([(1,)]) and seg[(1,)] == Cone.from_rays([(-1,)])


def _parallelepiped_oracle(r1, r2):
    """Hilbert basis of a 2d simplicial cone: rays plus nonzero lattice points of the half-open
    parallelepiped, minimized by hand."""
    det = r1[0] * r2[1] - r1[1] * r2[0]
    pts = set()
    for x, y in product(range(-10, 11), repeat=2):
        a = Fr(x * r2[1] - y * r2[0], det)
        b = Fr(r1[0] * y - r1[1] * x, det)
        if 0 <= a < 1 and 0 <= b < 1 and (x, y) != (0, 0):
            pts.add((x, y))
    cands = pts | {r1, r2}
    c = Cone.from_rays([r1, r2])
    return sorted(p for p in cands
                  if not any(q != p and c.contains((p[0] - q[0], p[1] - q[1]))
                             and (p[0] - q[0], p[1] - q[1]) != (0, 0) for q in cands))


def test_hilbert_bases():
    assert hilbert_basis(QUAD) == [(0, 1), (1, 0)]
    assert hilbert_basis(Cone.from_rays([(1, 0), (1, 2)])) == [(1, 0), (1, 1), (1, 2)]
    assert hilbert_basis(Cone.from_rays([(1,)])) == [(1,)]
    for r2 in [(1, 2), (1, 3), (2, 5), (-1, 4)]:
        c = Cone.from_rays([(1, 0), r2])
        assert hilbert_basis(c) == _parallelepiped_oracle((1, 0), r2)


def test_hilbert_budgets():
    with pytest.raises(NonPointed):
        hilbert_basis(Cone.full(2))
    with pytest.raises(RankBudgetExceeded):
        hilbert_basis(Cone.from_rays([tuple(int(i == j) for j in range(4)) for i in range(4)]))


def test_intersect_with_equations():
    # a segment carries an equation; the cut must keep both endpoints of the piece
    seg = Polyhedron.from_generators([(0, 0), (2, 0)])
    box = Polyhedron.from_generators([(-9, -9), (-9, 9), (1, -9), (1, 9)])
    assert sorted(intersect(seg, box).vertices) == [(0, 0), (1, 0)]
    flat = Polyhedron.from_generators([(0, 0, 0), (2, 0, 0), (0, 2, 0)])
    assert sorted(intersect(flat, Polyhedron.from_generators(
        [(x, y, z) for x in (-3, 1) for y in (-3, 3) for z in (-3, 3)])).vertices) == \
        [(0, 0, 0), (0, 2, 0), (1, 0, 0), (1, 1, 0)]


@given(st.lists(vec2, min_size=1, max_size=4), st.integers(-3, 3))
def test_intersect_matches_membership(verts, cut):
    P = Polyhedron.from_generators(verts)
    box = Polyhedron.from_generators([(-9, -9), (-9, 9), (cut, -9), (cut, 9)])
    both = intersect(P, box)
    for x, y in product(range(-10, 11), repeat=2):
        pt = (Fr(x, 2), Fr(y, 2))
        assert both.contains_point(pt) == (P.contains_point(pt) and pt[0] <= cut)


@given(st.lists(vec2, min_size=1, max_size=5), st.integers(-3, 3), vec2)
def test_face_of_convex_union(verts, cut, m):
    """face(D u D', m) lies in face(D, m) u face(D', m) when D u D' = P is convex (split by x = cut)."""
    P = Polyhedron.from_generators(verts)
    left = intersect(P, Polyhedron.from_generators([(-9, -9), (-9, 9), (cut, -9), (cut, 9)]))
    right = intersect(P, Polyhedron.from_generators([(9, -9), (9, 9), (cut, -9), (cut, 9)]))
    faces = [face_by(h, m) for h in (left, right) if not h.empty]
    top = face_by(P, m)
    vs = list(top.vertices)
    samples = vs + [tuple((a + b) / 2 for a, b in zip(v, w)) for v in vs for w in vs]
    for x in samples:
        assert any(f.contains_point(x) for f in faces)
