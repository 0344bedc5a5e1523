from fractions import Fraction as Fr

import pytest
from hypothesis import given, strategies as st

from divfan.errors import SizeBudgetExceeded
from divfan.fan import simplicial_projectivity_program
from divfan.fixtures import hirzebruch_toric, prism_toric
from divfan.lp import EQ, GE, LE, LinearProgram, check_farkas, fm_eliminate, solve


def test_bounded_maximum():
    lp = LinearProgram(["eps"])
    lp.add([1], LE, 1)
    lp.set_objective([1])
    r = solve(lp)
    assert r.status == "optimal" and r.assignment == [1] and r.objective_value == 1


def test_infeasible_pair_has_farkas_witness():
    lp = LinearProgram(["x"])
    lp.add([1], GE, 1)
    lp.add([-1], GE, 0)
    r = solve(lp)
    assert r.status == "infeasible"
    assert r.farkas == [1, 1]
    assert check_farkas(lp, r.farkas)
    assert fm_eliminate(lp) is False


def test_unbounded():
    lp = LinearProgram(["x", "y"])
    lp.add([1, -1], GE, 0)
    lp.set_objective([1, 1])
    assert solve(lp).status == "unbounded"


def test_equalities_and_free_variables():
    lp = LinearProgram(["x", "y"])
    lp.add([1, 1], EQ, -3)
    lp.add([1, -1], GE, Fr(1, 2))
    lp.set_objective({"x": -1})
    r = solve(lp)
    assert r.status == "optimal" and lp.satisfied_by(r.assignment)
    assert r.assignment == [Fr(-5, 4), Fr(-7, 4)]


def test_hirzebruch_system_feasible():
    for r in (1, 2, 3):
        lp = simplicial_projectivity_program(hirzebruch_toric(r).maximal())
        assert fm_eliminate(lp) is True
        assert solve(lp).feasible


def test_prism_system_infeasible():
    lp = simplicial_projectivity_program(prism_toric().maximal())
    assert fm_eliminate(lp) is False
    r = solve(lp)
    assert r.status == "infeasible" and check_farkas(lp, r.farkas)


def test_budgets():
    lp = LinearProgram([f"x{i}" for i in range(13)])
    lp.add([1] * 13, GE, 0)
    with pytest.raises(SizeBudgetExceeded):
        fm_eliminate(lp)
    big = LinearProgram([f"x{i}" for i in range(201)])
    with pytest.raises(SizeBudgetExceeded):
        solve(big)


rows = st.lists(st.tuples(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
                          st.sampled_from([GE, GE, EQ]), st.integers(-4, 4)), min_size=1, max_size=7)


@given(rows, st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_simplex_agrees_with_elimination(cons, obj):
    lp = LinearProgram(["a", "b", "c"], cons, obj)
    r = solve(lp)
    assert r.feasible == fm_eliminate(lp)
    if r.status == "optimal":
        assert lp.satisfied_by(r.assignment)
        assert r.objective_value == sum(a * b for a, b in zip(obj, r.assignment))
    if r.status == "infeasible":
        assert check_farkas(lp, r.farkas)
