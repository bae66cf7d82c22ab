"""Enumeration of connected Hopf gradings of k^{C_n} and of Taft categories.

Pipeline for k^{C_n}: an S-stable partition of C_n fixes the trivial-degree
subalgebra; every non-singleton block F carries an ergodic grading by a group
Gamma_F of order |F|, realized by distinct characters chi_u (u in F) and the
normalized units a_s(u) = chi_u(s).  Cross-block identifications of degrees
are the quotients of the product of block groups by subgroups meeting every
block coordinate trivially.  Each candidate is then filtered by the Hopf
homogeneity conditions.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field as dc_field
from math import gcd

from .groups import (FiniteAbelianGroup, FiniteGroup, Partition, abelian_groups_of_order,
                     characters, cyclic, quotient, stable_partitions, subgroups, epimorphisms,
                     cyclic_abelian)
from .hopf import HopfCategory, dual_group_hopf, taft_category
from .gradings import (Grading, dual_decomposition, is_hopf_grading_direct, trivial_grading,
                       verify_grading, walk_degree_subgroup)
from .linalg import inverse, nullspace, rref, sv_dense, sv_from_dense
from .scalars import Field, Scalar, primitive_root_of_unity

__all__ = [
    "BlockStructure", "EnumeratedGrading", "ClassificationRun", "ergodic_block_structures",
    "enumerate_hopf_gradings", "classify_hopf_gradings", "enumerate_taft_gradings",
    "TaftGrading", "brute_force_hopf_gradings", "equivalent_gradings", "DESK_BOUND",
    "taft_length_grading",
]

log = logging.getLogger(__name__)

DESK_BOUND = 12


@dataclass
class BlockStructure:
    block: tuple[int, ...]
    group: FiniteAbelianGroup
    characters: dict               # u -> Character
    units: dict                    # s -> sparse vector a_s on the Dirac basis

    def check(self, field: Field) -> bool:
        """a_0 = delta_F, a_s a_t = a_{s+t}, independence."""
        G = self.group
        one = field.one
        if self.units[G.zero] != {u: one for u in self.block}:
            return False
        if len({c.values for c in self.characters.values()}) != len(self.block):
            return False
        for s in G.elements():
            for t in G.elements():
                prod = {u: self.units[s][u] * self.units[t][u] for u in self.block}
                if prod != self.units[G.add(s, t)]:
                    return False
        rows = [[self.units[s].get(u, field.zero) for u in self.block] for s in G.elements()]
        return len(rref(rows, field)[1]) == len(self.block)


def ergodic_block_structures(field: Field, F, u0: int | None = None) -> list[BlockStructure]:
    """Ergodic gradings of k^F: for each abelian group of order |F| with
    enough characters over the field, every injective assignment of
    characters to F sending u0 to the trivial character."""
    F = tuple(sorted(F))
    u0 = F[0] if u0 is None else u0
    if u0 not in F:
        raise ValueError("normalization point must lie in the block")
    out = []
    rest = [u for u in F if u != u0]
    for G in abelian_groups_of_order(len(F)):
        chars = characters(G, field)
        if len(chars) < G.order:
            continue
        triv = next(c for c in chars if c.is_trivial())
        others = [c for c in chars if c is not triv]
        for perm in itertools.permutations(others, len(rest)):
            assign = {u0: triv, **dict(zip(rest, perm))}
            units = {s: {u: assign[u].value(s, field) for u in F} for s in G.elements()}
            bs = BlockStructure(F, G, assign, units)
            if not bs.check(field):
                raise AssertionError(f"normalized units of block {F} are not multiplicative")
            out.append(bs)
    return out


@dataclass
class EnumeratedGrading:
    grading: Grading
    partition: Partition
    blocks: list                   # BlockStructure per non-singleton block
    ambient: FiniteAbelianGroup
    kernel: tuple                  # generators of K in the ambient group
    is_grading: bool = True
    is_connected: bool = True
    is_hopf: bool = True

    @property
    def group(self) -> FiniteAbelianGroup:
        return self.grading.group

    def to_json(self) -> dict:
        out = self.grading.to_json()
        out["provenance"] = {
            "partition": self.partition.to_json(),
            "block_groups": [list(b.group.moduli) for b in self.blocks],
            "characters": [{str(u): [str(v) for v in c.values] for u, c in b.characters.items()}
                           for b in self.blocks],
        }
        return out


@dataclass
class CandidateRecord:
    partition: Partition
    group: tuple
    direct_delta: bool
    dual_multiplicative: bool
    hopf: bool


@dataclass
class ClassificationRun:
    gradings: list
    candidates: list = dc_field(default_factory=list)

    @property
    def disagreements(self) -> list:
        return [c for c in self.candidates if c.direct_delta != c.dual_multiplicative]


def _component_key(X: Grading):
    F = X.field
    d = X.algebra.dim
    comps = []
    for s, idx in sorted(X.components().items()):
        red, _ = rref([sv_dense(X.basis[i], d, F) for i in idx], F)
        comps.append((s, tuple(tuple(x.sort_key() for x in r) for r in red)))
    return (X.group.moduli, tuple(comps))


def _candidate_gradings(field: Field, n: int, H, partition: Partition):
    blocks = [b for b in partition.blocks if len(b) > 1]
    singles = [b[0] for b in partition.blocks if len(b) == 1]
    per_block = [ergodic_block_structures(field, b) for b in blocks]
    if any(not p for p in per_block):
        return
    one = field.one
    for combo in itertools.product(*per_block):
        moduli = [m for bs in combo for m in bs.group.moduli]
        amb = FiniteAbelianGroup(moduli)
        offsets = []
        pos = 0
        for bs in combo:
            offsets.append(pos)
            pos += bs.group.rank
        coord_sets = []
        for bs, off in zip(combo, offsets):
            coord_sets.append({amb.zero[:off] + s + amb.zero[off + bs.group.rank:]
                               for s in bs.group.elements()})
        for K in subgroups(amb):
            if any(len(K & cs) > 1 for cs in coord_sets):
                continue
            Q, pi = quotient(amb, sorted(K))
            basis, degrees = [], []
            for u in singles:
                basis.append({u: one})
                degrees.append(Q.zero)
            for bs, off in zip(combo, offsets):
                for s in bs.group.elements():
                    basis.append(dict(bs.units[s]))
                    degrees.append(pi(amb.zero[:off] + s + amb.zero[off + bs.group.rank:]))
            X = Grading(H, Q, basis, degrees, {"partition": partition.to_json()})
            yield EnumeratedGrading(X, partition, list(combo), amb, tuple(sorted(K)))


def classify_hopf_gradings(field: Field, n: int, antipode: str = "preserve") -> ClassificationRun:
    """Run the full pipeline and keep the per-candidate verdicts."""
    if not 2 <= n <= DESK_BOUND:
        raise ValueError(f"n must lie in [2, {DESK_BOUND}]")
    H = dual_group_hopf(field, cyclic(n))
    run = ClassificationRun([])
    seen = set()
    triv = trivial_grading(H)
    finest = Partition.of([[x] for x in range(n)])
    run.gradings.append(EnumeratedGrading(triv, finest, [], FiniteAbelianGroup([]), ()))
    seen.add(_component_key(triv))
    for P in stable_partitions(n):
        if P.is_finest():
            continue
        for cand in _candidate_gradings(field, n, H, P):
            X = cand.grading
            direct = is_hopf_grading_direct(X, antipode)
            delta_ok = "comultiplication homogeneous" not in direct.failures
            dual = dual_decomposition(X)
            run.candidates.append(CandidateRecord(P, X.group.moduli, delta_ok,
                                                  dual.multiplicative, direct.ok))
            if not direct.ok:
                continue
            key = _component_key(X)
            if key in seen:
                continue
            if not verify_grading(X).ok:
                raise AssertionError("pipeline produced a non-grading")
            if not walk_degree_subgroup(X).connected:
                raise AssertionError("pipeline produced a disconnected grading")
            seen.add(key)
            run.gradings.append(cand)
    log.debug("n=%d over %s: %d candidates, %d Hopf gradings", n, field.name,
              len(run.candidates), len(run.gradings))
    return run


def enumerate_hopf_gradings(field: Field, n: int, antipode: str = "preserve") -> list[EnumeratedGrading]:
    """Connected Hopf gradings of k^{C_n}, trivial grading first."""
    return classify_hopf_gradings(field, n, antipode).gradings


# ---------------------------------------------------------------------------
# Taft categories
# ---------------------------------------------------------------------------

@dataclass
class TaftGrading:
    m: int
    gamma: int
    grading: Grading
    connected: bool
    hopf: bool


def taft_length_grading(C: HopfCategory, m: int, gamma: int) -> Grading:
    """Degree gamma^l (written l*gamma in Z/m) on every path of length l."""
    n = C.meta["n"]
    G = cyclic_abelian(m)
    H = C.algebra
    deg = [((i // n) * gamma % m,) if m > 1 else () for i in range(H.dim)]
    return Grading(C, G, [H.basis_vector(i) for i in range(H.dim)], deg,
                   {"kind": "taft", "m": m, "gamma": gamma})


def enumerate_taft_gradings(n: int, q: Scalar, M: int, include_failures: bool = False):
    """Length gradings of the Taft category by C_m, m <= M.

    Returns the connected Hopf ones as TaftGrading records; with
    ``include_failures`` also returns the rejected candidates."""
    C = taft_category(q.field, n, q)
    passed, failed = [], []
    for m in range(1, M + 1):
        gens = [g for g in range(m) if gcd(g, m) == 1] if m > 1 else [0]
        for g in gens:
            X = taft_length_grading(C, m, g)
            ok = verify_grading(X).ok
            conn = walk_degree_subgroup(X).connected
            hopf = is_hopf_grading_direct(X).ok
            rec = TaftGrading(m, g, X, conn, hopf)
            if ok and conn and hopf:
                passed.append(rec)
            else:
                failed.append(rec)
            if (ok and conn and hopf) != (gcd(m, n) == 1):
                raise AssertionError(f"Taft grading m={m}, gamma={g} violates the coprimality rule")
    return (passed, failed) if include_failures else passed


# ---------------------------------------------------------------------------
# independent brute-force search
# ---------------------------------------------------------------------------

def _perm_mul(p, q):
    """(p q)(x) = p(q(x))."""
    return tuple(p[x] for x in q)


def _perm_closure(gens, n):
    ident = tuple(range(n))
    span = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _perm_mul(g, x)
                if y not in span:
                    span.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(span)


def brute_force_hopf_gradings(field: Field, n: int) -> list[Grading]:
    """Connected Hopf gradings of k^{C_n} found without partitions.

    Gradings of k^E by Gamma correspond to actions of characters of Gamma by
    algebra automorphisms, i.e. abelian groups P of permutations of E.  Every
    abelian subgroup of Sym(E) generated by at most two permutations is
    tried; the common eigenspaces of P are the homogeneous components.
    Grading, connectedness and the Hopf conditions are evaluated directly on
    functions E -> k.
    """
    F = field
    E = list(range(n))
    perms = list(itertools.permutations(E))
    groups_seen = set()
    for p, q in itertools.combinations_with_replacement(perms, 2):
        if _perm_mul(p, q) != _perm_mul(q, p):
            continue
        P = _perm_closure([p, q], n)
        groups_seen.add(P)
    out = []
    for P in sorted(groups_seen, key=lambda s: (len(s), sorted(s))):
        X = _eigen_grading(F, n, P)
        if X is not None and _direct_hopf(F, n, X):
            out.append(X)
    return out


def _eigen_grading(F: Field, n: int, P: frozenset):
    elems = sorted(P)
    pos = {g: i for i, g in enumerate(elems)}
    table = [[pos[_perm_mul(a, b)] for b in elems] for a in elems]
    PG = FiniteGroup(table)
    A, coords = PG.as_abelian()
    roots = [primitive_root_of_unity(F, m) for m in A.moduli]
    if any(r is None for r in roots):
        return None
    # character with exponent vector e: generator i -> roots[i]^e_i
    basis, degrees = [], []
    for e in A.elements():
        rows = []
        for g, c in zip(elems, coords):
            val = F.one
            for r, k, ei in zip(roots, c, e):
                val = val * r ** (k * ei)
            # f(g(x)) - chi(g) f(x) = 0 for every x
            for x in range(n):
                row = [F.zero] * n
                row[g[x]] = row[g[x]] + F.one
                row[x] = row[x] - val
                rows.append(row)
        for v in nullspace(rows, n, F):
            basis.append(sv_from_dense(v))
            degrees.append(e)
    if len(basis) != n:
        return None  # eigenspaces do not span: P is not diagonalizable over F
    if len(rref([sv_dense(b, n, F) for b in basis], F)[1]) != n:
        return None
    # connectedness: the support generates the character group
    supp = set(degrees)
    span = {A.zero}
    frontier = [A.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for s in supp:
                y = A.add(x, s)
                if y not in span:
                    span.add(y)
                    nxt.append(y)
        frontier = nxt
    if len(span) != A.order:
        return None
    H = dual_group_hopf(F, cyclic(n))
    return Grading(H, A, basis, degrees, {"kind": "brute force", "permutations": elems})


def _direct_hopf(F: Field, n: int, X: Grading) -> bool:
    """Delta f(x, y) = f(x + y), eps f = f(0), (S f)(x) = f(-x) on C_n, checked
    against the dual functionals of the homogeneous basis."""
    M = [sv_dense(b, n, F) for b in X.basis]
    Minv = inverse(M, F)
    dual = [[Minv[g][i] for g in range(n)] for i in range(n)]   # phi_i(g)
    A = X.group
    for r, f in enumerate(M):
        if X.degrees[r] != A.zero and not f[0].is_zero():
            return False
        Sf = [f[(-x) % n] for x in range(n)]
        for i in range(n):
            c = sum((dual[i][x] * Sf[x] for x in range(n)), F.zero)
            if not c.is_zero() and X.degrees[i] != X.degrees[r]:
                return False
        for i in range(n):
            for j in range(n):
                if A.add(X.degrees[i], X.degrees[j]) == X.degrees[r]:
                    continue
                c = F.zero
                for x in range(n):
                    if dual[i][x].is_zero():
                        continue
                    for y in range(n):
                        if dual[j][y].is_zero():
                            continue
                        c = c + dual[i][x] * dual[j][y] * f[(x + y) % n]
                if not c.is_zero():
                    return False
    return True


def equivalent_gradings(X: Grading, Y: Grading) -> bool:
    """Same homogeneous components, with degrees matched by an isomorphism
    of grading groups."""
    if X.group.order != Y.group.order:
        return False
    F = X.field
    d = X.algebra.dim

    def comps(Z):
        out = {}
        for s, idx in Z.components().items():
            red, _ = rref([sv_dense(Z.basis[i], d, F) for i in idx], F)
            out[s] = tuple(tuple(x.sort_key() for x in r) for r in red)
        return out

    cx, cy = comps(X), comps(Y)
    if sorted(cx.values()) != sorted(cy.values()):
        return False
    where = {v: s for s, v in cy.items()}
    for mu in epimorphisms(X.group, Y.group):
        if all(mu(s) == where[v] for s, v in cx.items()):
            return True
    return False
