"""Walk through the connected Hopf gradings of k^{C5}.

Shows the S-stable partitions, the gradings that survive the Hopf filter,
the dual decomposition matrix of a C4 grading and the morphisms between
the gradings, ending with the limit.

Run: python3 demos/c5_walkthrough.py
"""

from hopfpi1.classify import classify_hopf_gradings
from hopfpi1.gradings import dual_decomposition, partition_of
from hopfpi1.groups import cyclic, stable_partitions
from hopfpi1.pi1 import fundamental_group
from hopfpi1.scalars import parse_field

K = parse_field("Q(z12)")
G = cyclic(5)


def show_block(b):
    return "{" + ",".join(G.labels[x] for x in b) + "}"


print("S-stable partitions of C5:")
for P in stable_partitions(5):
    print("  ", " ".join(show_block(b) for b in P.blocks))

run = classify_hopf_gradings(K, 5)
print(f"\n{len(run.candidates)} candidate gradings examined, "
      f"{len(run.disagreements)} disagreements between the two Delta checks")
for k, eg in enumerate(run.gradings):
    X = eg.grading
    print(f"node {k}: group {X.group}, partition "
          + " ".join(show_block(b) for b in partition_of(X).blocks))

X = next(eg.grading for eg in run.gradings if eg.group.moduli == (4,))
print("\nHomogeneous basis of a C4 grading (rows over delta_1..delta_t^4) and degrees:")
for b, s in zip(X.matrix(), X.degrees):
    print("  ", [str(c) for c in b], s)
print("Dual basis of kC5 (rows over 1, t, ..., t^4):")
for row in dual_decomposition(X).matrix:
    print("  ", [str(c) for c in row])

res = fundamental_group(K, 5)
print("\nMorphisms (source -> target: mu on the generator, witnesses J):")
for e in res.edges:
    print(f"  {e.source} -> {e.target}: {e.mu.images}  J in {e.witnesses}")
print(f"\nPi1 = {res.group}, universal node {res.universal}")
