"""Randomised identity checks shared by ``divfan selftest`` and the test suite.

Each ``case_*`` function draws one instance from ``rng`` (anything with
``randint(a, b)`` and ``choice(seq)``: a ``random.Random`` or the hypothesis
adapter in the tests) and returns ``None`` on success or a dict describing
the counterexample.
"""

import random
import time
from fractions import Fraction

from .base import INF, BaseVariety, Plurifunction, RationalFunction, SemilinearBaseMap
from .exact import QQ
from .lp import EQ, GE, LinearProgram, check_farkas, fm_eliminate, solve
from .polyhedral import (Cone, Polyhedron, dual_cone, face_by, intersect, lattice_points_in_box,
                         mat_mul, support_value, vadd, vscale)
from .ppdivisor import (PPDivisor, PPDMorphism, compose_morphisms, evaluate,
                        localization_identity_check, transport, verify_morphism)

B1 = BaseVariety.projective_line(QQ)


def _frac(rng, lo=-3, hi=3, den=(1, 2, 3)):
    return Fraction(rng.randint(lo, hi), rng.choice(den))


def _vector(rng, n, **kw):
    return tuple(_frac(rng, **kw) for _ in range(n))


def _pointed_cone(rng, n):
    """A pointed cone from up to n small integer rays, or the apex."""
    for _ in range(20):
        k = rng.randint(0, n)
        rays = [tuple(rng.randint(-2, 2) for _ in range(n)) for _ in range(k)]
        rays = [r for r in rays if any(r)]
        c = Cone.from_rays(rays, n)
        if c.pointed:
            return c
    return Cone.zero(n)


def _polyhedron(rng, n, tail):
    verts = [_vector(rng, n) for _ in range(rng.randint(1, 4))]
    return Polyhedron.from_generators(verts, tail=tail)


def _dual_point(rng, tail, box=3):
    pts = lattice_points_in_box(dual_cone(tail), box)
    return rng.choice(sorted(pts))


def _subset_polyhedron(rng, d, sub_tail):
    """Random polyhedron inside d: convex combinations of its vertices plus tail points."""
    verts = []
    for _ in range(rng.randint(1, 3)):
        ws = [rng.randint(0, 3) for _ in d.vertices]
        if not any(ws):
            ws[0] = 1
        s = sum(ws)
        v = tuple(sum(Fraction(w, s) * x[i] for w, x in zip(ws, d.vertices)) for i in range(d.dim))
        for r in d.tail.rays:
            v = vadd(v, vscale(Fraction(rng.randint(0, 2), rng.choice((1, 2))), r))
        verts.append(v)
    return Polyhedron.from_generators(verts, tail=sub_tail)


# ---------------------------------------------------------------------------
# faces of polyhedra


def case_face_lemma(rng):
    """Part 1: D' in D gives D' cap face(D, m) in face(D', m).  Part 3: faces of faces."""
    n = rng.randint(2, 3)
    tail = _pointed_cone(rng, n)
    d = _polyhedron(rng, n, tail)
    sub_tail = Cone.from_rays([r for r in tail.rays if rng.randint(0, 1)], n)
    d2 = _subset_polyhedron(rng, d, sub_tail)
    if not d.contains(d2):
        return {"reason": "generator produced a non-subset", "d": d.to_json(), "d2": d2.to_json()}
    m = _dual_point(rng, tail)
    lhs = intersect(d2, face_by(d, m))
    if not lhs.empty and not face_by(d2, m).contains(lhs):
        return {"part": 1, "d": d.to_json(), "d2": d2.to_json(), "m": list(m)}
    m2 = _dual_point(rng, tail)
    f1, f2 = face_by(d, m), face_by(d, m2)
    both = intersect(f1, f2)
    if not both.empty:
        a, b = face_by(f1, m2), face_by(f2, m)
        if not (a == both == b):
            return {"part": 3, "d": d.to_json(), "m": list(m), "m2": list(m2)}
    return None


# ---------------------------------------------------------------------------
# pp-divisors on the affine line (empty coefficient at infinity)


def _affine_ppdivisor(rng, n):
    tail = _pointed_cone(rng, n)
    coeffs = {INF: None}
    for _ in range(rng.randint(0, 3)):
        p = QQ.element(rng.randint(-3, 3))
        coeffs[p] = _polyhedron(rng, n, tail)
    return PPDivisor(B1, tail, coeffs)


def _projective_ppdivisor(rng, n):
    tail = _pointed_cone(rng, n)
    coeffs = {}
    for p in rng.choice([[0], [0, INF], [0, 1, INF], [1, 2]]):
        coeffs[QQ.element(p) if p != INF else INF] = _polyhedron(rng, n, tail)
    return PPDivisor(B1, tail, coeffs)


def case_cpl_superadditive(rng):
    """h(m) + h(m') <= h(m + m') coefficientwise."""
    d = _projective_ppdivisor(rng, rng.randint(1, 3))
    m, m2 = _dual_point(rng, d.tail), _dual_point(rng, d.tail)
    a = evaluate(d, m) + evaluate(d, m2)
    b = evaluate(d, vadd(m, m2))
    if not a <= b:
        return {"d": d.to_json("P1"), "m": list(m), "m2": list(m2)}
    return None


def _section(rng, ev):
    """A polynomial-type f with div(f) + ev >= 0 on the affine line."""
    factors = {}
    for p, c in ev.terms.items():
        if p == INF:
            continue
        e = -(c.numerator // c.denominator) + rng.randint(0, 1)
        if e:
            factors[p] = e
    if rng.randint(0, 1):
        q = QQ.element(rng.randint(4, 6))
        factors[q] = factors.get(q, 0) + 1
    return RationalFunction(QQ.element(rng.choice((1, 2, -1))), factors)


def case_localization(rng):
    """D_f(m') = D(m' + k m) - D(k m) on Y_f."""
    d = _affine_ppdivisor(rng, rng.randint(1, 2))
    m = _dual_point(rng, d.tail, 2)
    f = _section(rng, evaluate(d, m))
    face_tail = d.tail.intersect(Cone.from_inequalities([], d.rank, [m])) if any(m) else d.tail
    m2 = _dual_point(rng, face_tail, 2)
    v = localization_identity_check(d, m, f, m2)
    if not v.ok:
        return {"d": d.to_json("P1"), "m": list(m), "f": f.to_json(), "m2": list(m2),
                "witness": v.witness}
    return None


# ---------------------------------------------------------------------------
# morphisms and plurifunctions


def _unimodular(rng, n):
    F = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    for _ in range(rng.randint(0, 3)):
        i, j = rng.randint(0, n - 1), rng.randint(0, n - 1)
        E = [[int(a == b) for b in range(n)] for a in range(n)]
        if i == j:
            E[i][i] = -1
        else:
            E[i][j] = rng.choice((-1, 1))
        F = mat_mul(tuple(map(tuple, E)), F)
    return F


def _rational_function(rng):
    factors = {}
    for _ in range(rng.randint(0, 2)):
        p = QQ.element(rng.randint(-2, 2))
        factors[p] = factors.get(p, 0) + rng.choice((-2, -1, 1, 2))
    return RationalFunction(QQ.element(rng.choice((1, -1, 2, Fraction(1, 2)))), factors)


def _plurifunction(rng, n):
    return Plurifunction(n, [(tuple(rng.randint(-2, 2) for _ in range(n)), _rational_function(rng))
                             for _ in range(rng.randint(0, 2))], QQ)


def _mobius(rng):
    for _ in range(10):
        M = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)]
        if M[0][0] * M[1][1] - M[0][1] * M[1][0]:
            return SemilinearBaseMap(QQ, M)
    return SemilinearBaseMap.identity(QQ)


def _morphism(rng, n):
    return PPDMorphism(_mobius(rng), _unimodular(rng, n), _plurifunction(rng, n))


def case_morphisms(rng):
    """Transports are morphisms; composites verify; composition is associative."""
    n = rng.randint(1, 2)
    d0 = _affine_ppdivisor(rng, n)
    a, b, c = _morphism(rng, n), _morphism(rng, n), _morphism(rng, n)
    d1 = transport(d0, a)
    d2 = transport(d1, b)
    for src, dst, phi, label in ((d0, d1, a, "a"), (d1, d2, b, "b"),
                                 (d0, d2, compose_morphisms(b, a), "b.a")):
        if not verify_morphism(src, dst, phi).ok:
            return {"failed": label, "d": d0.to_json("P1")}
    left = compose_morphisms(compose_morphisms(c, b), a)
    right = compose_morphisms(c, compose_morphisms(b, a))
    if left != right:
        return {"failed": "associativity"}
    return None


def case_plurifunctions(rng):
    """f(m + m') = f(m) f(m'), (fg)(m) = f(m) g(m), div(f(m)) = div(f)(m)."""
    from .base import plurifunction_eval, plurifunction_principal_divisor
    n = rng.randint(1, 3)
    f, g = _plurifunction(rng, n), _plurifunction(rng, n)
    m = tuple(rng.randint(-3, 3) for _ in range(n))
    m2 = tuple(rng.randint(-3, 3) for _ in range(n))
    if plurifunction_eval(f, vadd(m, m2)) != plurifunction_eval(f, m) * plurifunction_eval(f, m2):
        return {"failed": "additivity"}
    if plurifunction_eval(f * g, m) != plurifunction_eval(f, m) * plurifunction_eval(g, m):
        return {"failed": "multiplicativity"}
    tail = Cone.zero(n)
    lhs = plurifunction_eval(f, m).divisor()
    rhs = {p: support_value(P, m) for p, P in plurifunction_principal_divisor(f, tail, B1)}
    rhs = {p: c for p, c in rhs.items() if c}
    if dict(lhs.terms) != rhs:
        return {"failed": "principal divisor", "lhs": lhs.to_json()}
    return None


# ---------------------------------------------------------------------------
# linear programming


def case_simplex_vs_fm(rng):
    n = rng.randint(1, 5)
    lp = LinearProgram([f"x{i}" for i in range(n)])
    for _ in range(rng.randint(1, 8)):
        lp.add([rng.randint(-3, 3) for _ in range(n)], rng.choice((GE, GE, GE, EQ)), rng.randint(-4, 4))
    res = solve(lp)
    fm = fm_eliminate(lp)
    if res.feasible != fm:
        return {"simplex": res.status, "fm": fm, "lp": lp.to_json()}
    if res.feasible and not lp.satisfied_by(res.assignment):
        return {"failed": "point", "lp": lp.to_json()}
    if not res.feasible and not check_farkas(lp, res.farkas):
        return {"failed": "farkas", "lp": lp.to_json()}
    return None


SUITES = {
    "faces": (case_face_lemma, 1000),
    "cpl": (case_cpl_superadditive, 500),
    "localization": (case_localization, 500),
    "morphisms": (case_morphisms, 200),
    "plurifunctions": (case_plurifunctions, 200),
    "simplex_vs_fm": (case_simplex_vs_fm, 100),
}


def run_suite(name, cases=None, seed=0):
    fn, default = SUITES[name]
    cases = default if cases is None else cases
    rng = random.Random(f"{name}:{seed}")
    t = time.perf_counter()
    failures = []
    for i in range(cases):
        out = fn(rng)
        if out is not None:
            failures.append(dict(out, case=i))
    return {"suite": name, "cases": cases, "failures": len(failures),
            "first_failure": failures[0] if failures else None,
            "seconds": round(time.perf_counter() - t, 3)}


def run_all(scale=1.0, seed=0):
    return [run_suite(n, max(1, int(d * scale)), seed) for n, (_, d) in SUITES.items()]
