"""Quasi-projectivity as an exact LP: a toric prism that fails, solved two ways.

The C3-symmetric prism fan has a complete tail fan but no strictly convex
support function.  The simplex reports the optimum margin 0; the 7-variable
simplicial program is infeasible and comes with a Farkas certificate that
is checked independently.  Fourier-Motzkin confirms the small program and
refuses the large one on budget.

Run: python3 demos/prism_lp.py   (about 5 s)
"""

from divfan.errors import SizeBudgetExceeded
from divfan.fan import quasiprojectivity_check, simplicial_projectivity_program, toric_fan_as_divisorial
from divfan.fixtures import prism_toric
from divfan.lp import check_farkas, fm_eliminate, solve

sigma = prism_toric()
print(f"prism: {len(sigma.rays)} rays, {len(sigma.maximal())} maximal cones")

small = simplicial_projectivity_program(sigma.maximal())
res = solve(small)
print(f"simplicial program: {len(small.variables)} variables, status {res.status}")
print(f"  Farkas certificate checks: {check_farkas(small, res.farkas)}")
print(f"  Fourier-Motzkin says feasible: {fm_eliminate(small)}")

fan = toric_fan_as_divisorial(sigma.cones)
v = quasiprojectivity_check(fan)
print(f"divisorial program: quasi-projective {v.ok}, witness {v.witness}")
try:
    quasiprojectivity_check(fan, solver="fm")
except SizeBudgetExceeded as exc:
    print(f"  with --solver fm: {type(exc).__name__}: {exc}")
