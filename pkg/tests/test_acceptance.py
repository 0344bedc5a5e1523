"""Acceptance criteria 1-9, one PASS/FAIL line each (printed in the pytest summary).

Run directly (``python tests/test_acceptance.py``) to print only the lines.
"""

import time
from itertools import product

import pytest

from divfan.base import INF, BaseVariety, QDivisor, section_dim
from divfan.descent import (enumerate_homomorphisms, fan_automorphism_group, pairwise_maximal,
                            toric_descent_check, tvariety_descent_check, verify_galois_action)
from divfan.errors import FaceCertificateNotFound
from divfan.exact import QQ, cyclic_group, verify_group_presentation
from divfan.fan import (is_complete_fan, quasiprojectivity_check, separatedness_check, tail_fan,
                        validate_fan)
from divfan.fixtures import (fr_fan, fr_members, hirzebruch_toric, nonseparated_pair, p1_actions,
                             p1_toric, p3_actions, p3_fan, s4_mobius_group, s4_translates)
from divfan.polyhedral import identity_matrix, mat_mul
from divfan.ppdivisor import check_proper
from divfan.properties import run_all

RESULTS = {}


def record(key, ok, note, seconds):
    RESULTS[key] = (ok, f"{note} ({seconds:.2f} s)")
    return ok


def timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


# -- 1 --------------------------------------------------------------------------


def criterion_1():
    worst = 0.0
    for r in (1, 2, 3):
        (labels, mats, group), dt = timed(lambda: fan_automorphism_group(hirzebruch_toric(r)))
        worst = max(worst, dt)
        gens = [mats[g] for g in group.generators()]
        if group.order != 2 or gens != [((-1, 0), (r, 1))] or dt >= 1:
            return record("1", False, f"r={r}: order {group.order}, generators {gens}", dt)
    return record("1", True, "order 2 generated by [[-1,0],[r,1]] for r=1,2,3", worst)


# -- 2 --------------------------------------------------------------------------


def fr_checks(r, bound):
    fan = fr_fan(r, bound=bound)
    if not validate_fan(fan).ok:
        return False, "validation failed"
    if not all(check_proper(d).ok for d in fan):
        return False, "improper member"
    if not separatedness_check(fan).ok:
        return False, "not separated"
    v = quasiprojectivity_check(fan)
    if not v.ok or v.witness["epsilon"] in ("0", None):
        return False, "no support function"
    return True, f"{len(fan)} members, {len(fan.edges)} certified edges, eps={v.witness['epsilon']}"


def criterion_2():
    t = time.perf_counter()
    notes = []
    for r in (1, 2):
        ok, note = fr_checks(r, 4)
        notes.append(f"r={r}: {note}")
        if not ok:
            return record("2", False, "; ".join(notes), time.perf_counter() - t)
    dt = time.perf_counter() - t
    return record("2", dt < 30, "bound 4; " + "; ".join(notes), dt)


def criterion_2_r3():
    """F_3 at bound 4: the edge D1 & D3 in D3 needs |m| = 5, so no certificate exists."""
    t = time.perf_counter()
    try:
        fr_fan(3, bound=4)
        at4 = True
    except FaceCertificateNotFound:
        at4 = False
    ok5, note = fr_checks(3, 5)
    dt = time.perf_counter() - t
    record("2 (r=3, bound 4)", at4, "no certificate for D_omega1&D_omega3 in D_omega3 within bound 4", dt)
    record("2 (r=3, bound 5)", ok5, note, dt)
    return at4


# -- 3 --------------------------------------------------------------------------


def p3_setup():
    fan = p3_fan()
    tails = tail_fan(fan)
    base_ok = validate_fan(fan).ok and is_complete_fan([c for c in tails if c.dimension == 2], 2)
    return fan, base_ok, p3_actions(fan)


def criterion_3():
    t = time.perf_counter()
    fan, base_ok, acts = p3_setup()
    v = verify_galois_action(fan, acts["p3_literal"])
    dt = time.perf_counter() - t
    note = (f"fan valid, complete tail fan: {base_ok}; stated action with F(a,b)=(-b,-a) "
            f"does not verify: {v.witness}")
    if v.ok:
        rep = tvariety_descent_check(fan, acts["p3_literal"])
        return record("3", base_ok and rep.conclusion, "stated action verifies", dt)
    return record("3", False, note, dt)


def criterion_3_corrected():
    t = time.perf_counter()
    fan, base_ok, acts = p3_setup()
    v = verify_galois_action(fan, acts["p3_swap"])
    rep = tvariety_descent_check(fan, acts["p3_swap"])
    dt = time.perf_counter() - t
    a = v.details.get("assignments", {}).get("c1") if v.ok else None
    ok = base_ok and v.ok and rep.conclusion and dt < 30
    return record("3 (x0<->x1 action)", ok,
                  f"F(a,b)=(b,a) verifies, D0<->D1 with D2, D3 fixed; descent {rep.conclusion}", dt)


# -- 4 --------------------------------------------------------------------------


def criterion_4():
    t = time.perf_counter()
    s, acts = p1_actions()
    g = cyclic_group(2)
    sigma = p1_toric()
    out = []
    for name in ("p1_real", "p1_conic_trivial", "p1_conic"):
        act = acts[name]
        v = verify_galois_action(s, act)
        hom = {x: act.elements[x].F for x in g.elements}
        rep = toric_descent_check(sigma, g, hom)
        out.append(v.ok and rep.conclusion)
    dt = time.perf_counter() - t
    return record("4", all(out) and dt < 5,
                  "(g,id,1), (g,-id,1), (g,-id,-1): actions and cocycles verify, descent true", dt)


# -- 5 --------------------------------------------------------------------------


def criterion_5():
    t = time.perf_counter()
    counts = []
    for r in (1, 2, 3):
        labels, mats, aut = fan_automorphism_group(hirzebruch_toric(r))
        homs = enumerate_homomorphisms(cyclic_group(3), mats, mat_mul, identity_matrix(2))
        counts.append(len(homs) == 1 and all(F == identity_matrix(2) for F in homs[0].values()))
    dt = time.perf_counter() - t
    return record("5", all(counts) and dt < 1, "C3 -> Aut: only the trivial homomorphism, r=1,2,3", dt)


# -- 6 --------------------------------------------------------------------------


def criterion_6():
    t = time.perf_counter()
    group, maps = s4_mobius_group()
    certified = verify_group_presentation(group).ok
    orders = sorted(group.element_order(x) for x in group.elements)
    _, trans = s4_translates(1)
    maximal = pairwise_maximal(trans)
    per_chart = {}
    for d in maximal:
        chart = d.name.split("@")[0]
        per_chart[chart] = per_chart.get(chart, 0) + 1
    dt = time.perf_counter() - t
    ok = (certified and group.order == 24 and orders.count(4) == 6 and len(maximal) == 96
          and sorted(per_chart.values()) == [24] * 4 and dt < 300)
    return record("6", ok, f"group of order {group.order} (table certified: {certified}); "
                           f"{len(maximal)} maximal pp-divisors, per chart {sorted(per_chart.values())}", dt)


# -- 7 --------------------------------------------------------------------------


def criterion_7():
    t = time.perf_counter()
    v = separatedness_check(nonseparated_pair())
    dt = time.perf_counter() - t
    w = v.witness or {}
    ok = (not v.ok and w.get("mu") == [{"point": "0", "weight": "1"}, {"point": "1", "weight": "1"}]
          and w["intersection_of_mu"]["vertices"] == [["0"], ["2"]]
          and w["mu_of_intersection"]["vertices"] == [["1"]] and dt < 1)
    return record("7", ok, "mu = unit masses at 0 and 1: [0,2] vs {1}", dt)


# -- 8 --------------------------------------------------------------------------


def criterion_8():
    t = time.perf_counter()
    results = run_all(1.0, seed=0)
    dt = time.perf_counter() - t
    bad = sum(r["failures"] for r in results)
    counts = ", ".join(f"{r['suite']} {r['cases']}" for r in results)
    return record("8", bad == 0 and dt < 120, f"{counts}; failures {bad}", dt)


# -- 9 --------------------------------------------------------------------------


def criterion_9():
    from test_base import brute_force_h0
    P1 = BaseVariety.projective_line(QQ)
    cases = 0
    mismatches = []
    spent = 0.0
    for pts in ((0, 1, "inf"), (0, 1, 2), (0, "inf"), ("inf",)):
        for cs in product(range(-6, 7), repeat=len(pts)):
            if abs(sum(cs)) > 10:
                continue
            raw = dict(zip(pts, cs))
            d = QDivisor({(INF if p == "inf" else QQ.element(p)): c for p, c in raw.items()})
            t = time.perf_counter()
            got = section_dim(d, P1)
            spent += time.perf_counter() - t
            cases += 1
            if got != brute_force_h0(raw):
                mismatches.append(raw)
    return record("9", not mismatches and spent < 1,
                  f"{cases} integer divisors on <= 3 points, {len(mismatches)} mismatches", spent)


# -- pytest entry points ----------------------------------------------------------


def test_criterion_1():
    assert criterion_1()


def test_criterion_2():
    assert criterion_2()


def test_criterion_2_r3_needs_bound_5():
    criterion_2_r3()
    assert RESULTS["2 (r=3, bound 5)"][0]
    assert not RESULTS["2 (r=3, bound 4)"][0]


@pytest.mark.xfail(strict=True, reason="the stated C2 action with F(a,b)=(-b,-a) is not a morphism "
                                       "of the P3 fan, and no action can swap D2 and D3 while swapping D0 and D1")
def test_criterion_3():
    assert criterion_3()


def test_criterion_3_corrected_action():
    assert criterion_3_corrected()


def test_criterion_4():
    assert criterion_4()


def test_criterion_5():
    assert criterion_5()


def test_criterion_6():
    assert criterion_6()


def test_criterion_7():
    assert criterion_7()


def test_criterion_8():
    assert criterion_8()


def test_criterion_9():
    assert criterion_9()


def summary_lines():
    def order(k):
        return (int(k.split()[0]), k)
    return [f"criterion {k}: {'PASS' if ok else 'FAIL'}: {note}"
            for k, (ok, note) in sorted(RESULTS.items(), key=lambda kv: order(kv[0]))]


if __name__ == "__main__":
    import sys
    from pathlib import Path
    sys.path.insert(0, str(Path(__file__).parent))
    for fn in (criterion_1, criterion_2, criterion_2_r3, criterion_3, criterion_3_corrected,
               criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9):
        fn()
    print("\n".join(summary_lines()))
