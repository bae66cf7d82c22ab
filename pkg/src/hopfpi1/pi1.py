"""Diagram of connected Hopf gradings and its limit, the fundamental group."""

from __future__ import annotations

import itertools
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from math import gcd, lcm
from typing import Sequence

from .classify import enumerate_hopf_gradings, enumerate_taft_gradings
from .gradings import Grading, is_hopf_grading_direct, trivial_grading, verify_grading, walk_degree_subgroup
from .groups import (FiniteAbelianGroup, FiniteGroup, GroupHom, abelian_groups_of_order,
                     cyclic, diagram_limit, epimorphisms)
from .hopf import (HopfCategory, dual_group_hopf, hopf_automorphisms, taft_automorphisms,
                   taft_category, trivial_hopf_category)
from .linalg import sv_add_into
from .scalars import Field, Scalar

__all__ = [
    "GradingMorphism", "Pi1Result", "grading_morphisms", "build_diagram", "fundamental_group",
    "taft_truncated_pi1", "TaftPi1", "trivial_category_pi1", "find_universal", "thread_count",
]

log = logging.getLogger(__name__)


def thread_count() -> int:
    """Worker threads for morphism searches, from HOPF_PI1_THREADS."""
    try:
        return max(1, int(os.environ.get("HOPF_PI1_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class GradingMorphism:
    source: int
    target: int
    mu: GroupHom
    witnesses: list[int]


def _apply(J, v: dict) -> dict:
    out: dict = {}
    for i, c in v.items():
        sv_add_into(out, J[i], c)
    return out


def grading_morphisms(X: Grading, Y: Grading, autos: Sequence, source: int = 0,
                      target: int = 0) -> list[GradingMorphism]:
    """Every (mu, J) with mu: Gamma_X -> Gamma_Y onto and J(x) homogeneous of
    degree mu(deg x) in Y for each X-homogeneous basis vector x; one record
    per mu listing all witnesses J by index."""
    if X.target.algebra is not Y.target.algebra and X.algebra.dim != Y.algebra.dim:
        raise ValueError("gradings of different targets")
    images = [[Y.coords(_apply(J, b)) for b in X.basis] for J in autos]
    # degree of each image, or None when not homogeneous
    img_deg = []
    for per_J in images:
        row = []
        for co in per_J:
            degs = {Y.degrees[k] for k in co}
            row.append(degs.pop() if len(degs) == 1 else None)
        img_deg.append(row)
    out = []
    for mu in epimorphisms(X.group, Y.group):
        wit = []
        for j, row in enumerate(img_deg):
            if all(r is not None and r == mu(s) for r, s in zip(row, X.degrees)):
                wit.append(j)
        if wit:
            out.append(GradingMorphism(source, target, mu, wit))
    return out


@dataclass
class Pi1Result:
    group: FiniteAbelianGroup
    nodes: list
    edges: list
    universal: int | None
    label: str = ""

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.group.invariant_factors()

    def to_json(self, full: bool = False) -> dict:
        out = {"group": {"invariant_factors": list(self.invariant_factors)},
               "nodes": len(self.nodes), "edges": len(self.edges),
               "universal": self.universal}
        if full:
            out["node_groups"] = [list(X.group.invariant_factors()) for X in self.nodes]
            out["edge_list"] = [{"source": e.source, "target": e.target,
                                 "mu": [list(x) for x in e.mu.images],
                                 "witnesses": e.witnesses} for e in self.edges]
        return out


def build_diagram(gradings: Sequence[Grading], autos: Sequence) -> list[GradingMorphism]:
    """All morphisms between all ordered pairs, self-pairs included."""
    pairs = [(i, j) for i in range(len(gradings)) for j in range(len(gradings))]

    def work(p):
        i, j = p
        return grading_morphisms(gradings[i], gradings[j], autos, i, j)

    threads = thread_count()
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            results = list(ex.map(work, pairs))
    else:
        results = [work(p) for p in pairs]
    return [e for r in results for e in r]


def find_universal(nodes: Sequence[Grading], edges: Sequence[GradingMorphism]) -> int | None:
    """First node with exactly one morphism to every node."""
    count: dict = {}
    for e in edges:
        count[(e.source, e.target)] = count.get((e.source, e.target), 0) + 1
    for v in range(len(nodes)):
        if all(count.get((v, w), 0) == 1 for w in range(len(nodes))):
            return v
    return None


def _limit(nodes, edges):
    groups = [X.group for X in nodes]
    lim = diagram_limit(groups, [(e.source, e.target, e.mu) for e in edges])
    return lim.group.normalized()


def fundamental_group(field: Field, n: int, antipode: str = "preserve") -> Pi1Result:
    """Limit of the grading groups over the diagram of connected Hopf
    gradings of k^{C_n}."""
    nodes = [g.grading for g in enumerate_hopf_gradings(field, n, antipode)]
    H = nodes[0].algebra
    autos = hopf_automorphisms(H, cyclic(n))
    edges = build_diagram(nodes, autos)
    return Pi1Result(_limit(nodes, edges), nodes, edges, find_universal(nodes, edges),
                     f"k^C{n} over {field.name}")


# ---------------------------------------------------------------------------
# Taft categories
# ---------------------------------------------------------------------------

@dataclass
class TaftPi1:
    group: FiniteAbelianGroup
    expected_order: int
    nodes: list
    edges: list
    tau: dict = dc_field(default_factory=dict)   # x -> witness modulus or None

    @property
    def tau_ok(self) -> bool:
        return all(m is not None for m in self.tau.values())

    def to_json(self) -> dict:
        return {"group": {"invariant_factors": list(self.group.invariant_factors())},
                "expected": {"invariant_factors": list(FiniteAbelianGroup(
                    [self.expected_order] if self.expected_order > 1 else []).invariant_factors())},
                "nodes": len(self.nodes), "edges": len(self.edges),
                "tau": {"checked": len(self.tau), "ok": self.tau_ok,
                        "failures": [x for x, m in self.tau.items() if m is None]}}


def tau_report(n: int, M: int, xmax: int = 1000) -> dict:
    """For each 1 <= x <= xmax the least m <= M coprime to n with x mod m != 0."""
    mods = [m for m in range(1, M + 1) if gcd(m, n) == 1]
    return {x: next((m for m in mods if x % m), None) for x in range(1, xmax + 1)}


def taft_truncated_pi1(n: int, q: Scalar, M: int, xmax: int = 1000) -> TaftPi1:
    recs = enumerate_taft_gradings(n, q, M)
    nodes = [r.grading for r in recs]
    C = nodes[0].target
    autos = taft_automorphisms(C)
    edges = build_diagram(nodes, autos)
    expected = 1
    for m in range(1, M + 1):
        if gcd(m, n) == 1:
            expected = lcm(expected, m)
    group = _limit(nodes, edges)
    return TaftPi1(group, expected, nodes, edges, tau_report(n, M, xmax))


# ---------------------------------------------------------------------------
# trivial Hopf categories
# ---------------------------------------------------------------------------

def trivial_category_gradings(C: HopfCategory) -> list[Grading]:
    """Connected Hopf gradings of a trivial Hopf category, by brute force
    over degree assignments of its Dirac basis by abelian groups of order at
    most |G|."""
    H = C.algebra
    out = [trivial_grading(C)]
    for order in range(2, C.group.order + 1):
        for A in abelian_groups_of_order(order):
            for degs in itertools.product(A.elements(), repeat=H.dim):
                X = Grading(C, A, [H.basis_vector(i) for i in range(H.dim)], degs)
                if (verify_grading(X).ok and walk_degree_subgroup(X).connected
                        and is_hopf_grading_direct(X).ok):
                    out.append(X)
    return out


def trivial_category_pi1(field: Field, G: FiniteGroup) -> Pi1Result:
    C = trivial_hopf_category(field, G)
    nodes = trivial_category_gradings(C)
    ident = [{i: field.one} for i in range(C.dim)]
    edges = build_diagram(nodes, [ident])
    return Pi1Result(_limit(nodes, edges), nodes, edges, find_universal(nodes, edges),
                     f"trivial category over {G.name}")
