"""Hirzebruch surfaces: automorphisms of the fan, forms over R, and the C* picture.

Run: python3 demos/hirzebruch_descent.py
"""

from divfan.descent import enumerate_homomorphisms, fan_automorphism_group, toric_descent_check
from divfan.exact import cyclic_group
from divfan.fan import quasiprojectivity_check, separatedness_check, validate_fan
from divfan.fixtures import fr_fan, hirzebruch_toric
from divfan.polyhedral import identity_matrix, mat_mul
from divfan.ppdivisor import evaluate

for r in (1, 2, 3):
    sigma = hirzebruch_toric(r)
    labels, mats, aut = fan_automorphism_group(sigma)
    gens = [mats[g] for g in aut.generators()]
    print(f"F_{r}: rays {list(sigma.rays)}; Aut has order {aut.order}, generated by {gens}")

    # A C2 action through the nontrivial automorphism, and the trivial one.
    c2 = cyclic_group(2)
    for label, F in (("trivial", identity_matrix(2)), ("swap", gens[0])):
        rep = toric_descent_check(sigma, c2, {"c0": identity_matrix(2), "c1": F})
        print(f"  C2 via {label}: descent {rep.conclusion}")

    # No element of order 3 in Aut, so C3 only acts trivially.
    homs = enumerate_homomorphisms(cyclic_group(3), mats, mat_mul, identity_matrix(2))
    print(f"  homomorphisms C3 -> Aut: {len(homs)}")

print()
print("The same surface as a C*-surface over P^1 (r = 1).")
fan = fr_fan(1)
for d in fan.maximal_members():
    print("  ", d)
print(f"  closure has {len(fan)} members and {len(fan.edges)} certified face relations")
print(f"  validate: {validate_fan(fan).ok}, separated: {separatedness_check(fan).ok}")
d1 = fan["D_omega1_r1"]
print(f"  D_omega1 evaluated at m=1: {evaluate(d1, (1,))}")
v = quasiprojectivity_check(fan)
print(f"  support function LP: feasible={v.ok}, margin eps={v.witness['epsilon']}")

print()
print("For r = 3 one face relation needs a certificate of size 5, past the default search bound 4.")
try:
    fr_fan(3, bound=4)
except Exception as exc:
    print(f"  bound 4: {type(exc).__name__}: {exc}")
print(f"  bound 5: {len(fr_fan(3, bound=5))} members")
