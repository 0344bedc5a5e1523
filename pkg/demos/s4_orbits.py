"""The octahedral group S4 acting on P^1 by Mobius maps, transported to the F_1 fan.

Each of the four charts has 24 translates, all pairwise maximal.  Closing
the 96 translates under intersection overruns the member budget, which the
CLI reports as an error rather than a partial answer.

Run: python3 demos/s4_orbits.py
"""

from divfan.descent import pairwise_maximal
from divfan.exact import verify_group_presentation
from divfan.fixtures import s4_mobius_group, s4_translates

group, maps = s4_mobius_group()
orders = sorted(group.element_order(x) for x in group.elements)
print(f"group order {group.order}; multiplication table certified: {verify_group_presentation(group).ok}")
print("element orders:", {k: orders.count(k) for k in sorted(set(orders))})

_, trans = s4_translates(1)
maximal = pairwise_maximal(trans)
per_chart = {}
for d in maximal:
    chart = d.name.split("@")[0]
    per_chart[chart] = per_chart.get(chart, 0) + 1
print(f"{len(trans)} translates, {len(maximal)} pairwise maximal")
for chart, n in sorted(per_chart.items()):
    print(f"  {chart}: {n}")
print("one translate:", maximal[len(maximal) // 2])
