"""P^3 as a complexity-one T-variety and the C2 action that swaps x0 and x1.

The action in the worked example claims F(a, b) = (-b, -a) and that the
generator swaps D2 with D3.  The checker rejects it and names the failing
chart.  The geometric map [x0:x1:x2:x3] -> [x1:x0:x2:x3] swaps the two
torus factors instead, F(a, b) = (b, a), which fixes D2 and D3.

Run: python3 demos/p3_action.py
"""

from divfan.descent import complete_assignment, tvariety_descent_check, verify_galois_action
from divfan.fan import is_complete_fan, tail_fan, validate_fan
from divfan.fixtures import p3_actions, p3_fan

fan = p3_fan()
print("Maximal charts:")
for d in fan.maximal_members():
    print("  ", d)
tails = [c for c in tail_fan(fan) if c.dimension == 2]
print(f"valid: {validate_fan(fan).ok}; tail fan complete: {is_complete_fan(tails, 2)}")

acts = p3_actions(fan)
for name in ("p3_literal", "p3_minus_id", "p3_swap"):
    act = acts[name]
    g = act.elements["c1"]
    v = verify_galois_action(fan, act)
    print(f"\n{name}: F = {g.F}, plurifunction {g.plurifn.to_json()}")
    print(f"  verifies: {v.ok}")
    if v.ok:
        a = complete_assignment(fan, g)
        print("  on maximal charts:", {k: a[k] for k in ("P3_D0", "P3_D1", "P3_D2", "P3_D3")})
        print(f"  descent: {tvariety_descent_check(fan, act).conclusion}")
    else:
        print(f"  witness: {v.witness}")
