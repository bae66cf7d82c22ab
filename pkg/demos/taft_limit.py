"""Truncated fundamental group of the Taft category T_{3,q}.

For each bound M the limit over the length gradings by C_m (m <= M, m
coprime to 3) is cyclic of order lcm of those m.  The tau report shows
how large M must be before every x <= 1000 is separated from zero.

Run: python3 demos/taft_limit.py
"""

from hopfpi1.pi1 import taft_truncated_pi1
from hopfpi1.scalars import parse_field, primitive_root_of_unity

K = parse_field("Q(z3)")
q = primitive_root_of_unity(K, 3)
for M in (1, 2, 5, 10, 20):
    res = taft_truncated_pi1(3, q, M)
    fails = [x for x, m in res.tau.items() if m is None]
    print(f"M={M:>2}: {len(res.nodes):>3} nodes, {len(res.edges):>5} edges, "
          f"limit {res.group}, expected C{res.expected_order}, "
          f"tau failures {len(fails)}" + (f" (first {fails[:5]})" if fails else ""))
