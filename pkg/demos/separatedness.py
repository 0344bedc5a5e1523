"""Two charts that glue to a non-separated space, with the measure that proves it.

Run: python3 demos/separatedness.py
"""

import json

from divfan.fan import separatedness_check
from divfan.fixtures import nonseparated_pair

fan = nonseparated_pair()
for d in fan.maximal_members():
    print("  ", d)
v = separatedness_check(fan)
print(f"separated: {v.ok}")
print(json.dumps(v.witness, indent=2))
