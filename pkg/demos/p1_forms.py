"""Three real forms of P^1 seen through one divisorial fan over a point.

The line with coordinate z, the conic x^2 + y^2 = -z^2 (no real points), and
a deliberately broken cocycle that the checker must reject.

Run: python3 demos/p1_forms.py
"""

from divfan.descent import verify_galois_action
from divfan.fixtures import p1_actions, p1_broken_action

fan, acts = p1_actions()
print("Fan of P^1 over Spec C:")
for d in fan:
    print("  ", d)

for name, what in (("p1_real", "complex conjugation, F = id"),
                   ("p1_conic_trivial", "F = -id, plurifunction 1"),
                   ("p1_conic", "F = -id, plurifunction -1 (the pointless conic)")):
    v = verify_galois_action(fan, acts[name])
    print(f"{name}: {what}: verifies {v.ok}")

fan_b, broken = p1_broken_action()
v = verify_galois_action(fan_b, broken)
print(f"broken action: verifies {v.ok}; witness {v.witness}")
