"""Fundamental groups of k^{C_n} for n = 2..7 over Q(z12), with diagram sizes.

Run: python3 demos/table.py
"""

import time

from hopfpi1.pi1 import fundamental_group
from hopfpi1.scalars import parse_field

K = parse_field("Q(z12)")
print(f"{'n':>2}  {'Pi1':<5} {'nodes':>5} {'edges':>5}  universal  node groups")
for n in range(2, 8):
    t0 = time.perf_counter()
    res = fundamental_group(K, n)
    groups = ", ".join(str(X.group) for X in res.nodes)
    uni = "-" if res.universal is None else f"#{res.universal} {res.nodes[res.universal].group}"
    print(f"{n:>2}  {str(res.group):<5} {len(res.nodes):>5} {len(res.edges):>5}  {uni:<9}  "
          f"[{groups}]  ({time.perf_counter() - t0:.1f}s)")

print("\nSame table with the degree-inverting antipode convention:")
print(", ".join(f"{n}:{fundamental_group(K, n, 'invert').group}" for n in range(2, 8)))
