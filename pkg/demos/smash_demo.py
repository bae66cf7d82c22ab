"""Smash products as Galois coverings.

Builds k^{C3} # C2 and T_{3,q} # C2, verifies them as Hopf categories and
prints the object orbits of the translation action.

Run: python3 demos/smash_demo.py
"""

from hopfpi1.classify import enumerate_hopf_gradings, taft_length_grading
from hopfpi1.gradings import smash
from hopfpi1.hopf import taft_category
from hopfpi1.scalars import parse_field, primitive_root_of_unity

Q = parse_field("Q")
X = enumerate_hopf_gradings(Q, 3)[1].grading
res = smash(X)
print(f"k^C3 # {X.group}: {res.category}, checks ok: {res.report.ok}")

K = parse_field("Q(z3)")
T = taft_category(K, 3, primitive_root_of_unity(K, 3))
res = smash(taft_length_grading(T, 2, 1))
objs = res.category.group
print(f"T_3 # C2: {res.category}, checks ok: {res.report.ok}")
orbits = {tuple(sorted({perm[o] for perm in res.object_action.values()})) for o in objs.elements()}
for orb in sorted(orbits):
    print("  orbit:", [objs.labels[o] for o in orb])
print("failed checks:", res.report.failures or "none")
