from fractions import Fraction as Fr
from math import factorial

import pytest
from hypothesis import given, strategies as st

from divfan.base import (INF, BaseVariety, Plurifunction, QDivisor, RationalFunction,
                         SemilinearBaseMap, apply_base_map, classify_positivity,
                         divisor_of_function, plurifunction_eval, plurifunction_principal_divisor,
                         section_dim, section_membership)
from divfan.errors import NonIntegralPairing, UnsupportedBase
from divfan.exact import QQ, QQ_I, conjugation
from divfan.polyhedral import Cone, Polyhedron

P1 = BaseVariety.projective_line(QQ)
A1 = P1.remove([0])
Z, ONE = QQ.element(0), QQ.element(1)
t = RationalFunction.monomial(QQ)


def test_divisors_of_functions():
    assert divisor_of_function(t, P1) == QDivisor({Z: 1, INF: -1})
    f = RationalFunction.linear(1, QQ, 2) / t
    assert divisor_of_function(f, P1) == QDivisor({ONE: 2, Z: -1, INF: -1})


roots = st.integers(-5, 5).map(QQ.element)
factored = st.builds(lambda c, fs: RationalFunction(QQ.element(c), dict(fs)),
                     st.integers(1, 5), st.dictionaries(roots, st.integers(-3, 3), max_size=4))


@given(factored)
def test_principal_divisors_have_degree_zero(f):
    assert divisor_of_function(f, P1).degree() == 0


def test_positivity():
    assert classify_positivity(QDivisor({Z: Fr(1, 2)}), P1) == {"big": True, "semiample": True}
    assert classify_positivity(QDivisor({INF: -1}), P1) == {"big": False, "semiample": False}
    assert classify_positivity(QDivisor({INF: -7}), A1) == {"big": True, "semiample": True}


def test_section_dimensions():
    assert section_dim(QDivisor({Z: 3}), P1) == 4
    assert section_dim(QDivisor({Z: Fr(1, 2)}), P1) == 1
    assert section_dim(QDivisor({INF: -1}), P1) == 0
    with pytest.raises(UnsupportedBase):
        section_dim(QDivisor(), A1)


def _rank(rows):
    rows = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                q = rows[i][col] / rows[rank][col]
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def brute_force_h0(coeffs):
    """dim of {f : div f + d >= 0} for an integer divisor d, via f = h / prod_{a_p > 0} (t - p)^{a_p}.

    h runs over polynomials of degree <= a_inf + sum of positive finite a_p; each negative finite
    a_p imposes vanishing of h and its first -a_p - 1 derivatives at p.
    """
    top = coeffs.get("inf", 0) + sum(a for p, a in coeffs.items() if p != "inf" and a > 0)
    if top < 0:
        return 0
    rows = []
    for p, a in coeffs.items():
        if p == "inf" or a >= 0:
            continue
        for k in range(-a):
            rows.append([Fr(factorial(j), factorial(j - k)) * Fr(p) ** (j - k) if j >= k else Fr(0)
                         for j in range(top + 1)])
    return top + 1 - (_rank(rows) if rows else 0)


points = st.sampled_from([0, 1, -1, 2, Fr(1, 2), "inf"])


@given(st.dictionaries(points, st.integers(-6, 6), max_size=3))
def test_section_dim_matches_monomial_count(raw):
    if abs(sum(raw.values())) > 10:
        return
    d = QDivisor({(INF if p == "inf" else QQ.element(p)): a for p, a in raw.items()})
    assert section_dim(d, P1) == brute_force_h0(raw)


def test_section_membership():
    assert section_membership(t, QDivisor({INF: 1}), P1)
    assert section_membership(RationalFunction.one(), QDivisor({Z: 2}), P1)
    assert not section_membership(t.inverse(), QDivisor(), P1)


def test_plurifunction_evaluation():
    assert plurifunction_eval(Plurifunction(1, [((1,), t)]), (2,)) == t ** 2
    pf = Plurifunction(2, [((1, 0), t), ((0, 1), RationalFunction.linear(1))])
    assert plurifunction_eval(pf, (0, 0)) == RationalFunction.one()
    assert plurifunction_eval(pf, (1, 1)) == t * RationalFunction.linear(1)
    with pytest.raises(NonIntegralPairing):
        plurifunction_eval(pf, (Fr(1, 2), 0))


def test_principal_polyhedral_divisor():
    terms = dict(plurifunction_principal_divisor(Plurifunction(1, [((1,), t)]), Cone.zero(1), P1))
    assert terms == {Z: Polyhedron.point((1,)), INF: Polyhedron.point((-1,))}
    const = Plurifunction(1, [((1,), RationalFunction.const(3))])
    assert plurifunction_principal_divisor(const, Cone.zero(1), P1) == []


def test_inverse_plurifunction_is_neutral():
    pf = Plurifunction(2, [((1, 0), t), ((2, -1), RationalFunction.linear(3))])
    prod = pf * pf.inverse()
    assert plurifunction_principal_divisor(prod, Cone.zero(2), P1) == []


def test_base_maps_on_points():
    inv = SemilinearBaseMap(QQ, ((0, 1), (1, 0)))
    assert apply_base_map(inv, QDivisor({Z: 1})) == QDivisor({INF: 1})
    conj = SemilinearBaseMap(QQ_I, ((1, 0), (0, 1)), conjugation())
    assert conj(QQ_I.gen()) == -QQ_I.gen()


mobius = st.tuples(*[st.integers(-3, 3)] * 4).filter(lambda m: m[0] * m[3] != m[1] * m[2])


@given(mobius, st.integers(-4, 4) | st.just(None))
def test_pullback_of_point_is_preimage(m, p):
    psi = SemilinearBaseMap(QQ, ((m[0], m[1]), (m[2], m[3])))
    p = INF if p is None else QQ.element(p)
    a, b, c, d = (Fr(x) for x in m)
    # preimage by the inverse matrix, written out by hand
    if p == INF:
        pre = INF if c == 0 else QQ.element(-d / c)
    else:
        den = -c * p.rational() + a
        pre = INF if den == 0 else QQ.element((d * p.rational() - b) / den)
    assert psi.pull_divisor(QDivisor({p: 1})) == QDivisor({pre: 1})
