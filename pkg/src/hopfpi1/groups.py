"""Finite groups by Cayley table, finite abelian groups in cyclic
decomposition, homomorphisms, characters and limits of finite diagrams.

Abelian group elements are tuples of residues and the group law is written
additively; the identity is the zero tuple.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterable, Sequence

from .intmat import (elementary_to_invariant, factorize, invariants_from_elements,
                     smith_normal_form, subgroup_invariants)
from .scalars import Field, Scalar

__all__ = [
    "FiniteGroup", "FiniteAbelianGroup", "GroupHom", "Character", "Partition",
    "cyclic", "cyclic_abelian", "direct_product", "abelian_groups_of_order",
    "characters", "epimorphisms", "homomorphisms", "automorphisms",
    "subgroup_generated", "SubgroupResult", "subgroups", "quotient",
    "diagram_limit", "DiagramLimit", "set_partitions", "stable_partitions",
]


# ---------------------------------------------------------------------------
# Cayley-table groups
# ---------------------------------------------------------------------------

class FiniteGroup:
    """A finite group given by its multiplication table on indices 0..n-1.

    The axioms are checked on construction.
    """

    def __init__(self, table: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
                 name: str | None = None):
        n = len(table)
        if n == 0:
            raise ValueError("a group has at least one element")
        self.table = tuple(tuple(row) for row in table)
        if any(len(row) != n or any(not 0 <= x < n for x in row) for row in self.table):
            raise ValueError("malformed Cayley table")
        self.order = n
        ident = [e for e in range(n) if all(self.table[e][x] == x == self.table[x][e]
                                            for x in range(n))]
        if len(ident) != 1:
            raise ValueError("Cayley table has no identity")
        self.identity = ident[0]
        inv = []
        for x in range(n):
            ys = [y for y in range(n) if self.table[x][y] == self.identity]
            if len(ys) != 1 or self.table[ys[0]][x] != self.identity:
                raise ValueError(f"element {x} has no inverse")
            inv.append(ys[0])
        self.inverse = tuple(inv)
        t = self.table
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise ValueError("Cayley table is not associative")
        self.labels = tuple(labels) if labels else tuple(f"g{i}" for i in range(n))
        self.name = name or f"G{n}"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a]
                   for a in range(self.order) for b in range(self.order))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        x = self.identity
        for _ in range(k):
            x = self.table[x][a]
        return x

    def generators(self) -> list[int]:
        """A small generating set chosen greedily."""
        gens: list[int] = []
        span = {self.identity}
        for a in range(self.order):
            if a not in span:
                gens.append(a)
                span = self._closure(gens)
                if len(span) == self.order:
                    break
        return gens

    def _closure(self, gens: Iterable[int]) -> set[int]:
        span = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
        return span

    def automorphisms(self) -> list[tuple[int, ...]]:
        """All automorphisms, as permutation tuples sigma[x], by brute force
        over images of a generating set."""
        gens = self.generators()
        # words for every element in terms of the generators
        word = {self.identity: []}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for gi, g in enumerate(gens):
                    y = self.table[x][g]
                    if y not in word:
                        word[y] = word[x] + [gi]
                        nxt.append(y)
            frontier = nxt
        out = []
        for imgs in itertools.product(range(self.order), repeat=len(gens)):
            sigma = [0] * self.order
            for x, w in word.items():
                y = self.identity
                for gi in w:
                    y = self.table[y][imgs[gi]]
                sigma[x] = y
            if len(set(sigma)) != self.order:
                continue
            if all(sigma[self.table[a][b]] == self.table[sigma[a]][sigma[b]]
                   for a in range(self.order) for b in range(self.order)):
                out.append(tuple(sigma))
        return out

    def as_abelian(self) -> tuple[FiniteAbelianGroup, list[tuple[int, ...]]]:
        """Abelian view: returns (A, coords) where coords[x] is the element of
        A corresponding to index x.  Requires the table to be commutative."""
        if not self.is_abelian():
            raise ValueError("group is not abelian")
        if getattr(self, "_abelian", None) is not None:
            return self._abelian
        # brute-force search for a cyclic decomposition matching invariant factors
        orders = {x: self.element_order(x) for x in self.elements()}
        inv = invariants_from_elements(
            list(self.elements()), lambda a, b: self.table[a][b], self.identity)
        A = FiniteAbelianGroup(inv)
        result = None
        for gens in itertools.product(*[[x for x in self.elements() if orders[x] == m]
                                        for m in inv]):
            coords = {}
            for e in A.elements():
                x = self.identity
                for g, k in zip(gens, e):
                    x = self.table[x][self.power(g, k)]
                coords.setdefault(x, e)
            if len(coords) == self.order:
                result = (A, [coords[x] for x in self.elements()])
                break
        self._abelian = result
        return result

    def to_json(self) -> dict:
        return {"table": [list(r) for r in self.table], "labels": list(self.labels),
                "name": self.name}

    @classmethod
    def from_json(cls, data: dict) -> FiniteGroup:
        if "cyclic" in data:
            return cyclic(int(data["cyclic"]))
        return cls(data["table"], data.get("labels"), data.get("name"))

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def cyclic(n: int) -> FiniteGroup:
    """C_n = <t | t^n = 1>; index i stands for t^i."""
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    labels = ["1" if i == 0 else ("t" if i == 1 else f"t^{i}") for i in range(n)]
    g = FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)], labels, f"C{n}")
    g._abelian = (FiniteAbelianGroup([n] if n > 1 else []),
                  [((i,) if n > 1 else ()) for i in range(n)])
    return g


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G x H with index g * |H| + h."""
    n, m = G.order, H.order
    table = [[G.table[a // m][b // m] * m + H.table[a % m][b % m]
              for b in range(n * m)] for a in range(n * m)]
    labels = [f"({G.labels[a // m]},{H.labels[a % m]})" for a in range(n * m)]
    return FiniteGroup(table, labels, f"{G.name}x{H.name}")


# ---------------------------------------------------------------------------
# Finite abelian groups
# ---------------------------------------------------------------------------

class FiniteAbelianGroup:
    """Z/m_1 x ... x Z/m_r with every m_i >= 2.

    An empty list is the trivial group.  The moduli need not be in
    invariant-factor form; :meth:`invariant_factors` gives the normal form.
    """

    def __init__(self, moduli: Sequence[int] = ()):
        moduli = tuple(int(m) for m in moduli)
        if any(m < 2 for m in moduli):
            raise ValueError(f"cyclic factors must have order >= 2, got {moduli}")
        self.moduli = moduli
        self.order = prod(moduli)
        self.rank = len(moduli)
        self.zero = (0,) * len(moduli)

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*[range(m) for m in self.moduli]))

    def add(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a):
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def sub(self, a, b):
        return tuple((x - y) % m for x, y, m in zip(a, b, self.moduli))

    def scale(self, k: int, a):
        return tuple((k * x) % m for x, m in zip(a, self.moduli))

    def reduce(self, a):
        return tuple(int(x) % m for x, m in zip(a, self.moduli))

    def generators(self) -> list[tuple[int, ...]]:
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def element_order(self, a) -> int:
        o = 1
        for x, m in zip(a, self.moduli):
            k = m // gcd(x, m)
            o = o * k // gcd(o, k)
        return o

    def exponent(self) -> int:
        e = 1
        for m in self.moduli:
            e = e * m // gcd(e, m)
        return e

    def invariant_factors(self) -> tuple[int, ...]:
        elementary = []
        for m in self.moduli:
            elementary += [p ** a for p, a in factorize(m).items()]
        return tuple(elementary_to_invariant(elementary))

    def is_isomorphic(self, other: FiniteAbelianGroup) -> bool:
        return self.invariant_factors() == other.invariant_factors()

    def is_trivial(self) -> bool:
        return self.order == 1

    def normalized(self) -> FiniteAbelianGroup:
        return FiniteAbelianGroup(self.invariant_factors())

    def to_json(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors())}

    @classmethod
    def from_json(cls, data: dict) -> FiniteAbelianGroup:
        return cls(data.get("moduli", data.get("invariant_factors", [])))

    def __eq__(self, other):
        return isinstance(other, FiniteAbelianGroup) and self.moduli == other.moduli

    def __hash__(self):
        return hash(self.moduli)

    def __str__(self):
        inv = self.invariant_factors()
        return " x ".join(f"C{m}" for m in inv) if inv else "0"

    def __repr__(self):
        return f"FiniteAbelianGroup({list(self.moduli)})"


def cyclic_abelian(n: int) -> FiniteAbelianGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    return FiniteAbelianGroup([n] if n > 1 else [])


def abelian_groups_of_order(n: int) -> list[FiniteAbelianGroup]:
    """One group per isomorphism class, in invariant-factor form."""
    per_prime = []
    for p, e in sorted(factorize(n).items()):
        per_prime.append([[p ** k for k in part] for part in _integer_partitions(e)])
    out = []
    for combo in itertools.product(*per_prime):
        elementary = [q for part in combo for q in part]
        out.append(FiniteAbelianGroup(elementary_to_invariant(elementary)))
    out.sort(key=lambda g: (len(g.moduli), g.moduli))
    return out


def _integer_partitions(n: int, largest: int | None = None):
    if n == 0:
        yield []
        return
    largest = n if largest is None else largest
    for k in range(min(n, largest), 0, -1):
        for rest in _integer_partitions(n - k, k):
            yield [k] + rest


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism of finite abelian groups given by the images of the
    source generators."""

    source: FiniteAbelianGroup
    target: FiniteAbelianGroup
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.images) != self.source.rank:
            raise ValueError("one image per source generator required")
        for img, m in zip(self.images, self.source.moduli):
            if self.target.scale(m, img) != self.target.zero:
                raise ValueError("image order does not divide generator order")

    def __call__(self, x):
        acc = self.target.zero
        for k, img in zip(x, self.images):
            if k:
                acc = self.target.add(acc, self.target.scale(k, img))
        return acc

    def compose(self, first: GroupHom) -> GroupHom:
        """self o first."""
        if first.target != self.source:
            raise ValueError("homomorphisms are not composable")
        return GroupHom(first.source, self.target, tuple(self(img) for img in first.images))

    def image(self) -> set:
        return _closure(self.target, list(self.images))

    def is_surjective(self) -> bool:
        return len(self.image()) == self.target.order

    def is_injective(self) -> bool:
        return len(self.image()) == self.source.order

    @classmethod
    def identity(cls, G: FiniteAbelianGroup) -> GroupHom:
        return cls(G, G, tuple(G.generators()))

    @classmethod
    def zero(cls, G: FiniteAbelianGroup, H: FiniteAbelianGroup) -> GroupHom:
        return cls(G, H, tuple(H.zero for _ in range(G.rank)))


def _closure(G: FiniteAbelianGroup, gens: list) -> set:
    span = {G.zero}
    frontier = [G.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.add(x, g)
                if y not in span:
                    span.add(y)
                    nxt.append(y)
        frontier = nxt
    return span


def homomorphisms(G: FiniteAbelianGroup, H: FiniteAbelianGroup) -> list[GroupHom]:
    choices = []
    for m in G.moduli:
        choices.append([h for h in H.elements() if H.scale(m, h) == H.zero])
    return [GroupHom(G, H, imgs) for imgs in itertools.product(*choices)]


def epimorphisms(G: FiniteAbelianGroup, H: FiniteAbelianGroup) -> list[GroupHom]:
    """Every surjective homomorphism G -> H, by brute force over generator
    images."""
    if G.order % H.order:
        return []
    return [f for f in homomorphisms(G, H) if f.is_surjective()]


def automorphisms(G: FiniteAbelianGroup) -> list[GroupHom]:
    return epimorphisms(G, G)


@dataclass(frozen=True)
class SubgroupResult:
    group: FiniteAbelianGroup
    inclusion: GroupHom
    elements: frozenset
    is_whole: bool


def subgroup_generated(G: FiniteAbelianGroup, elems: Iterable) -> SubgroupResult:
    """Closure of ``elems``; the result carries an abstract group in
    invariant-factor form and an injective map onto the closure."""
    elems = [G.reduce(e) for e in elems]
    span = _closure(G, elems)
    inv = invariants_from_elements(span, G.add, G.zero)
    S = FiniteAbelianGroup(inv)
    # find generators in span with the right orders realizing S
    inclusion = None
    by_order: dict[int, list] = {}
    for x in sorted(span):
        by_order.setdefault(G.element_order(x), []).append(x)
    for gens in itertools.product(*[by_order.get(m, []) for m in inv]):
        hom = GroupHom(S, G, tuple(gens))
        if len(hom.image()) == len(span):
            inclusion = hom
            break
    if inclusion is None:  # only for the trivial subgroup
        inclusion = GroupHom.zero(S, G)
    return SubgroupResult(S, inclusion, frozenset(span), len(span) == G.order)


def subgroups(G: FiniteAbelianGroup) -> list[frozenset]:
    """All subgroups as element sets, smallest first."""
    found = {frozenset([G.zero])}
    frontier = list(found)
    elems = G.elements()
    while frontier:
        nxt = []
        for H in frontier:
            for g in elems:
                if g not in H:
                    K = frozenset(_closure(G, list(H) + [g]))
                    if K not in found:
                        found.add(K)
                        nxt.append(K)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def quotient(G: FiniteAbelianGroup, kernel_gens: Iterable) -> tuple[FiniteAbelianGroup, GroupHom]:
    """G / <kernel_gens> in invariant-factor form with its projection."""
    r = G.rank
    cols = [[m if i == j else 0 for i in range(r)] for j, m in enumerate(G.moduli)]
    cols += [list(G.reduce(k)) for k in kernel_gens]
    if r == 0:
        Q = FiniteAbelianGroup([])
        return Q, GroupHom(G, Q, ())
    mat = [[c[i] for c in cols] for i in range(r)]
    D, P, _ = smith_normal_form(mat)
    diag = [D[i][i] if i < len(D[0]) else 0 for i in range(r)]
    keep = [i for i in range(r) if diag[i] != 1]
    if any(diag[i] == 0 for i in keep):
        raise ValueError("quotient is infinite")
    Q = FiniteAbelianGroup([diag[i] for i in keep])
    images = []
    for j in range(r):
        images.append(tuple(P[i][j] % diag[i] for i in keep))
    return Q, GroupHom(G, Q, tuple(images))


# ---------------------------------------------------------------------------
# Characters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Character:
    """Homomorphism G -> k^*, stored by its values on the generators."""

    group: FiniteAbelianGroup
    values: tuple[Scalar, ...]

    def __call__(self, x) -> Scalar:
        out = None
        for k, v in zip(x, self.values):
            term = v ** k
            out = term if out is None else out * term
        if out is None:
            raise ValueError("character of the trivial group needs a field")
        return out

    def value(self, x, field: Field) -> Scalar:
        out = field.one
        for k, v in zip(x, self.values):
            if k:
                out = out * v ** k
        return out

    def is_trivial(self) -> bool:
        return all(v == v.field.one for v in self.values)


def characters(G: FiniteAbelianGroup, field: Field) -> list[Character]:
    """Every homomorphism G -> field^*, in canonical order."""
    choices = [field.roots_of_unity(m) for m in G.moduli]
    return [Character(G, vals) for vals in itertools.product(*choices)]


# ---------------------------------------------------------------------------
# Limits
# ---------------------------------------------------------------------------

@dataclass
class DiagramLimit:
    """The subgroup of the product of the nodes made of compatible families.

    ``generators`` are families (one element per node) generating the
    limit; ``elements`` is filled by the brute-force route only.
    """

    group: FiniteAbelianGroup
    generators: list[tuple]
    elements: list[tuple] | None = None
    method: str = "congruence"

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.group.invariant_factors()


def _check_edges(nodes, edges):
    for e in edges:
        src, tgt, hom = e
        if nodes[src] != hom.source or nodes[tgt] != hom.target:
            raise ValueError(f"edge {src}->{tgt} does not match its nodes")


def diagram_limit(nodes: Sequence[FiniteAbelianGroup],
                  edges: Sequence[tuple[int, int, GroupHom]],
                  method: str = "auto", brute_force_bound: int = 10 ** 6) -> DiagramLimit:
    """Limit of a finite diagram of finite abelian groups.

    ``edges`` are triples (source index, target index, homomorphism).  The
    brute-force route enumerates the product when its order is at most
    ``brute_force_bound``; otherwise the congruence system is solved.
    """
    _check_edges(nodes, edges)
    if not nodes:
        return DiagramLimit(FiniteAbelianGroup([]), [()], [()], "empty")
    size = prod(g.order for g in nodes)
    if method == "auto":
        method = "brute" if size <= brute_force_bound else "congruence"
    if method == "brute":
        return _limit_brute(nodes, edges)
    return _limit_congruence(nodes, edges)


def _limit_brute(nodes, edges) -> DiagramLimit:
    found = []
    for fam in itertools.product(*[g.elements() for g in nodes]):
        if all(hom(fam[s]) == fam[t] for s, t, hom in edges):
            found.append(fam)

    def add(a, b):
        return tuple(g.add(x, y) for g, x, y in zip(nodes, a, b))

    zero = tuple(g.zero for g in nodes)
    inv = invariants_from_elements(found, add, zero)
    return DiagramLimit(FiniteAbelianGroup(inv), found, found, "brute")


def _limit_congruence(nodes, edges) -> DiagramLimit:
    offsets, moduli = [], []
    for g in nodes:
        offsets.append(len(moduli))
        moduli.extend(g.moduli)
    r = len(moduli)
    gens = [[int(i == j) for j in range(r)] for i in range(r)]
    for s, t, hom in edges:
        os_, ot = offsets[s], offsets[t]
        for j, mj in enumerate(hom.target.moduli):
            coef: dict[int, int] = {}
            for i, img in enumerate(hom.images):
                if img[j]:
                    coef[os_ + i] = coef.get(os_ + i, 0) + img[j]
            coef[ot + j] = coef.get(ot + j, 0) - 1
            vals = [sum(c * g[k] for k, c in coef.items()) % mj for g in gens]
            gens = _kernel_step(gens, vals, mj, moduli)
    inv = subgroup_invariants(gens, moduli)

    def split(vec):
        return tuple(tuple(vec[o:o + g.rank]) for o, g in zip(offsets, nodes))

    return DiagramLimit(FiniteAbelianGroup(inv), [split(g) for g in gens], None, "congruence")


def _kernel_step(gens, vals, m, moduli):
    """Generators of {sum z_k g_k : sum z_k vals_k == 0 mod m}."""
    out = []
    piv = None
    pval = 0
    for g, v in zip(gens, vals):
        if piv is None:
            if v % m == 0:
                out.append(g)
            else:
                piv, pval = g, v
            continue
        if v % m == 0:
            out.append(g)
            continue
        d, s, t = _xgcd(pval, v)
        new_piv = [(s * a + t * b) % mm for a, b, mm in zip(piv, g, moduli)]
        rel = [((v // d) * a - (pval // d) * b) % mm for a, b, mm in zip(piv, g, moduli)]
        out.append(rel)
        piv, pval = new_piv, d % m
    if piv is not None:
        k = m // gcd(pval, m)
        out.append([(k * a) % mm for a, mm in zip(piv, moduli)])
    return [g for g in out if any(g)]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


# ---------------------------------------------------------------------------
# Partitions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Partition:
    """A set partition stored canonically as sorted blocks of sorted indices."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        canon = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        if any(not b for b in canon):
            raise ValueError("empty block")
        flat = [x for b in canon for x in b]
        if len(flat) != len(set(flat)):
            raise ValueError("blocks overlap")
        object.__setattr__(self, "blocks", canon)

    @classmethod
    def of(cls, blocks) -> Partition:
        return cls(tuple(tuple(b) for b in blocks))

    def universe(self) -> set[int]:
        return {x for b in self.blocks for x in b}

    def block_of(self, x: int) -> tuple[int, ...]:
        return next(b for b in self.blocks if x in b)

    def is_finest(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]

    def __len__(self):
        return len(self.blocks)


def set_partitions(items: Sequence[int]):
    """Every set partition of ``items`` as a list of blocks."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def stable_partitions(n: int) -> list[Partition]:
    """Partitions of C_n having {1} as a block and permuted by s -> s^-1."""
    if n < 1:
        raise ValueError("n must be positive")
    out = set()
    for part in set_partitions(range(1, n)):
        P = Partition.of([[0]] + part)
        inverted = Partition.of([[(-x) % n for x in b] for b in P.blocks])
        if inverted == P:
            out.add(P)
    return sorted(out, key=lambda P: (-len(P.blocks), P.blocks))
