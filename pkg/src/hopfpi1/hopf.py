"""Finite-dimensional Hopf algebras and Hopf categories by structure constants.

A :class:`HopfAlgebra` stores its structure sparsely:

* ``mult[(i, j)]`` is the sparse vector ``b_i * b_j``;
* ``comult[i]`` is ``Delta(b_i)`` as ``{(j, k): c}`` meaning ``c b_j (x) b_k``;
* ``antipode[i]`` is the sparse vector ``S(b_i)``;
* ``unit`` is a sparse vector and ``counit`` a dense list of scalars.

A :class:`HopfCategory` over a finite group G is a Hopf algebra together with
a complete family of orthogonal idempotents indexed by G whose span is a
copy of k^G.  The morphism space from x to y is ``e_y H e_x``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .groups import FiniteGroup, cyclic
from .linalg import inverse, sv_add_into, sv_dense, sv_from_dense, sv_scale, rref
from .scalars import Field, Scalar, parse_field

__all__ = [
    "HopfAlgebra", "HopfCategory", "HopfError", "GCoalgebraView",
    "dual_group_hopf", "group_algebra", "verify_hopf", "is_dual_pair",
    "trivial_hopf_category", "taft_category", "peirce", "sum_algebra",
    "to_turaev", "from_turaev", "hopf_automorphisms", "brute_force_dirac_automorphisms",
    "taft_automorphisms", "change_basis", "category_from_algebra",
    "algebra_to_json", "algebra_from_json", "category_to_json", "category_from_json",
    "same_structure", "VerificationReport",
]


class HopfError(ValueError):
    """Invalid Hopf data or refused construction."""


# ---------------------------------------------------------------------------
# sparse tensor helpers
# ---------------------------------------------------------------------------

def _tensor_add_into(acc: dict, t: dict, coeff: Scalar | None = None) -> dict:
    return sv_add_into(acc, t, coeff)


def _tensor_of(u: dict, v: dict) -> dict:
    out = {}
    for i, a in u.items():
        for j, b in v.items():
            out[(i, j)] = a * b
    return out


_MAX_WITNESSES = 16


@dataclass
class VerificationReport:
    """Per-check verdicts.  ``failures`` maps a check name to a witness
    description (first failing basis indices)."""

    checks: list[str] = dc_field(default_factory=list)
    failures: dict[str, str] = dc_field(default_factory=dict)
    witnesses: dict[str, list[str]] = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, name: str, witness: str | None):
        self.checks.append(name)
        if witness is not None:
            self.failures[name] = witness

    def record_all(self, name: str, witnesses: list[str]):
        self.record(name, "; ".join(witnesses) if witnesses else None)
        if witnesses:
            self.witnesses[name] = list(witnesses)

    def merge(self, other: VerificationReport, prefix: str = ""):
        for c in other.checks:
            self.checks.append(prefix + c)
        for k, v in other.failures.items():
            self.failures[prefix + k] = v

    def to_json(self) -> dict:
        return {"ok": self.ok,
                "checks": [{"name": c, "ok": c not in self.failures,
                            **({"witness": self.failures[c]} if c in self.failures else {})}
                           for c in self.checks]}

    def __str__(self):
        lines = []
        for c in self.checks:
            lines.append(f"{c}: " + ("ok" if c not in self.failures
                                     else f"FAIL ({self.failures[c]})"))
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Hopf algebras
# ---------------------------------------------------------------------------

class HopfAlgebra:
    def __init__(self, field: Field, labels: Sequence[str], mult: dict, unit: dict,
                 comult: Sequence[dict], counit: Sequence[Scalar], antipode: Sequence[dict],
                 meta: dict | None = None):
        self.field = field
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        d = self.dim
        if len(comult) != d or len(counit) != d or len(antipode) != d:
            raise HopfError("structure tensors do not match the dimension")
        for (i, j), v in mult.items():
            if not (0 <= i < d and 0 <= j < d) or any(not 0 <= k < d for k in v):
                raise HopfError(f"multiplication entry ({i},{j}) out of range")
        self.mult = {k: dict(v) for k, v in mult.items() if v}
        self.unit = dict(unit)
        self.comult = tuple(dict(c) for c in comult)
        self.counit = tuple(field(c) for c in counit)
        self.antipode = tuple(dict(s) for s in antipode)
        self.meta = dict(meta or {})

    # -- basic operations -------------------------------------------------------
    def basis_vector(self, i: int) -> dict:
        return {i: self.field.one}

    def mul(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                prod = self.mult.get((i, j))
                if prod:
                    sv_add_into(out, prod, a * b)
        return out

    def comul(self, u: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            sv_add_into(out, self.comult[i], a)
        return out

    def eps(self, u: dict) -> Scalar:
        acc = self.field.zero
        for i, a in u.items():
            c = self.counit[i]
            if not c.is_zero():
                acc = acc + a * c
        return acc

    def S(self, u: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            sv_add_into(out, self.antipode[i], a)
        return out

    def tensor_mul(self, s: dict, t: dict) -> dict:
        """Product in H (x) H."""
        out: dict = {}
        for (i, j), a in s.items():
            for (k, l), b in t.items():
                p1 = self.mult.get((i, k))
                if not p1:
                    continue
                p2 = self.mult.get((j, l))
                if not p2:
                    continue
                c = a * b
                for x, u in p1.items():
                    for y, w in p2.items():
                        sv_add_into(out, {(x, y): u * w}, c)
        return out

    def apply_linear(self, columns: Sequence[dict], u: dict) -> dict:
        """Apply the linear map whose i-th column is ``columns[i]``."""
        out: dict = {}
        for i, a in u.items():
            sv_add_into(out, columns[i], a)
        return out

    def __repr__(self):
        return f"HopfAlgebra(dim={self.dim}, field={self.field.name})"


def same_structure(A: HopfAlgebra, B: HopfAlgebra, perm: Sequence[int] | None = None) -> bool:
    """Equality of structure constants, optionally after renumbering the
    basis of A by ``perm`` (A's index i becomes B's index perm[i])."""
    if A.dim != B.dim or A.field is not B.field:
        return False
    p = list(perm) if perm is not None else list(range(A.dim))

    def mv(v):
        return {p[k]: c for k, c in v.items()}

    def mt(t):
        return {(p[a], p[b]): c for (a, b), c in t.items()}

    if {(p[i], p[j]): mv(v) for (i, j), v in A.mult.items()} != B.mult:
        return False
    if mv(A.unit) != B.unit:
        return False
    for i in range(A.dim):
        if mt(A.comult[i]) != B.comult[p[i]]:
            return False
        if A.counit[i] != B.counit[p[i]]:
            return False
        if mv(A.antipode[i]) != B.antipode[p[i]]:
            return False
    return True


def _first(it):
    return next(iter(it), None)


def verify_hopf(H: HopfAlgebra) -> VerificationReport:
    """Exact check of the Hopf algebra axioms on the basis.

    Each failed axiom lists the basis indices (or index tuples) at which it
    fails."""
    rep = VerificationReport()
    F = H.field
    d = H.dim
    e = [H.basis_vector(i) for i in range(d)]
    pairs = list(itertools.product(range(d), repeat=2))

    def assoc():
        for i, j in pairs:
            ij = H.mult.get((i, j), {})
            for k in range(d):
                if H.mul(ij, e[k]) != H.mul(e[i], H.mult.get((j, k), {})):
                    yield f"b{i}, b{j}, b{k}"

    def unit():
        for i in range(d):
            if H.mul(H.unit, e[i]) != e[i] or H.mul(e[i], H.unit) != e[i]:
                yield f"b{i}"

    def coassoc():
        for i in range(d):
            left: dict = {}
            right: dict = {}
            for (j, k), c in H.comult[i].items():
                for (a, b), c2 in H.comult[j].items():
                    sv_add_into(left, {(a, b, k): c * c2})
                for (a, b), c2 in H.comult[k].items():
                    sv_add_into(right, {(j, a, b): c * c2})
            if left != right:
                yield f"b{i}"

    def counit():
        for i in range(d):
            left: dict = {}
            right: dict = {}
            for (j, k), c in H.comult[i].items():
                sv_add_into(left, {k: c * H.counit[j]})
                sv_add_into(right, {j: c * H.counit[k]})
            if left != e[i] or right != e[i]:
                yield f"b{i}"

    def comult_mult():
        if H.comul(H.unit) != _tensor_of(H.unit, H.unit):
            yield "unit"
        for i, j in pairs:
            if H.comul(H.mult.get((i, j), {})) != H.tensor_mul(H.comult[i], H.comult[j]):
                yield f"b{i}, b{j}"

    def counit_mult():
        if H.eps(H.unit) != F.one:
            yield "unit"
        for i, j in pairs:
            if H.eps(H.mult.get((i, j), {})) != H.counit[i] * H.counit[j]:
                yield f"b{i}, b{j}"

    def antipode():
        for i in range(d):
            target = sv_scale(H.unit, H.counit[i])
            left: dict = {}
            right: dict = {}
            for (j, k), c in H.comult[i].items():
                sv_add_into(left, H.mul(H.antipode[j], e[k]), c)
                sv_add_into(right, H.mul(e[j], H.antipode[k]), c)
            if left != target or right != target:
                yield f"b{i}"

    for name, check in [("associativity", assoc), ("unit", unit),
                        ("coassociativity", coassoc), ("counit", counit),
                        ("comultiplication multiplicative", comult_mult),
                        ("counit multiplicative", counit_mult), ("antipode", antipode)]:
        rep.record_all(name, list(itertools.islice(check(), _MAX_WITNESSES)))
    return rep


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def dual_group_hopf(field: Field, G: FiniteGroup) -> HopfAlgebra:
    """k^G on the Dirac basis delta_s."""
    n = G.order
    one = field.one
    mult = {(s, s): {s: one} for s in range(n)}
    unit = {s: one for s in range(n)}
    comult = [dict() for _ in range(n)]
    for a in range(n):
        for b in range(n):
            comult[G.mul(a, b)][(a, b)] = one
    counit = [one if s == G.identity else field.zero for s in range(n)]
    antipode = [{G.inverse[s]: one} for s in range(n)]
    labels = [f"d[{G.labels[s]}]" for s in range(n)]
    return HopfAlgebra(field, labels, mult, unit, comult, counit, antipode,
                       meta={"kind": "dual_group", "group": G})


def group_algebra(field: Field, G: FiniteGroup) -> HopfAlgebra:
    """kG on the group-element basis."""
    n = G.order
    one = field.one
    mult = {(a, b): {G.mul(a, b): one} for a in range(n) for b in range(n)}
    unit = {G.identity: one}
    comult = [{(s, s): one} for s in range(n)]
    counit = [one] * n
    antipode = [{G.inverse[s]: one} for s in range(n)]
    H = HopfAlgebra(field, list(G.labels), mult, unit, comult, counit, antipode,
                    meta={"kind": "group_algebra", "group": G})
    if not is_dual_pair(dual_group_hopf(field, G), H):
        raise HopfError("group algebra is not dual to the function algebra")
    return H


def is_dual_pair(A: HopfAlgebra, B: HopfAlgebra) -> bool:
    """Whether B is the linear dual of A in the dual basis: multiplication of
    one is the transposed comultiplication of the other, and so on."""
    if A.dim != B.dim:
        return False
    d = A.dim
    for i, j in itertools.product(range(d), repeat=2):
        for k in range(d):
            if A.mult.get((i, j), {}).get(k, A.field.zero) != \
                    B.comult[k].get((i, j), B.field.zero):
                return False
            if B.mult.get((i, j), {}).get(k, B.field.zero) != \
                    A.comult[k].get((i, j), A.field.zero):
                return False
    for i in range(d):
        if A.unit.get(i, A.field.zero) != B.counit[i] or B.unit.get(i, B.field.zero) != A.counit[i]:
            return False
        for j in range(d):
            if A.antipode[i].get(j, A.field.zero) != B.antipode[j].get(i, B.field.zero):
                return False
    return True


def change_basis(H: HopfAlgebra, rows: Sequence[dict], labels: Sequence[str] | None = None) -> HopfAlgebra:
    """H in the basis c_i = sum_k rows[i][k] b_k."""
    F = H.field
    d = H.dim
    M = [sv_dense(r, d, F) for r in rows]
    if len(M) != d:
        raise HopfError("a basis needs exactly dim vectors")
    Minv = inverse(M, F)
    # b_k = sum_i Minv[k][i] c_i
    back = [sv_from_dense(Minv[k]) for k in range(d)]

    def conv(v: dict) -> dict:
        out: dict = {}
        for k, c in v.items():
            sv_add_into(out, back[k], c)
        return out

    def conv2(t: dict) -> dict:
        out: dict = {}
        for (j, k), c in t.items():
            for a, x in back[j].items():
                for b, y in back[k].items():
                    sv_add_into(out, {(a, b): x * y}, c)
        return out

    rows = [dict(r) for r in rows]
    mult = {}
    for i in range(d):
        for j in range(d):
            v = conv(H.mul(rows[i], rows[j]))
            if v:
                mult[(i, j)] = v
    unit = conv(H.unit)
    comult = [conv2(H.comul(r)) for r in rows]
    counit = [H.eps(r) for r in rows]
    antipode = [conv(H.S(r)) for r in rows]
    labels = labels or [f"c{i}" for i in range(d)]
    return HopfAlgebra(F, labels, mult, unit, comult, counit, antipode)


# ---------------------------------------------------------------------------
# Hopf categories
# ---------------------------------------------------------------------------

class HopfCategory:
    """Sum algebra plus object idempotents indexed by a finite group.

    ``idempotents[x]`` is the sparse vector of ``1_x`` for the group element
    with index x.
    """

    def __init__(self, group: FiniteGroup, algebra: HopfAlgebra, idempotents: Sequence[dict],
                 meta: dict | None = None, check: bool = True):
        self.group = group
        self.algebra = algebra
        self.field = algebra.field
        self.idempotents = tuple(dict(e) for e in idempotents)
        self.meta = dict(meta or {})
        if len(self.idempotents) != group.order:
            raise HopfError("one idempotent per group element required")
        if check:
            rep = check_idempotent_family(algebra, group, self.idempotents)
            if not rep.ok:
                raise HopfError("bad idempotent family: " + "; ".join(
                    f"{k} ({v})" for k, v in rep.failures.items()))
        self._homs = None

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def objects(self) -> range:
        return self.group.elements()

    def hom_of_basis(self) -> list[tuple[int, int]] | None:
        """(target, source) per basis vector when every basis vector lies in
        a single morphism space; None otherwise."""
        if self._homs is None:
            H = self.algebra
            out = []
            for i in range(H.dim):
                b = H.basis_vector(i)
                found = None
                for y in self.objects():
                    left = H.mul(self.idempotents[y], b)
                    if not left:
                        continue
                    for x in self.objects():
                        if H.mul(left, self.idempotents[x]) == b:
                            found = (y, x)
                            break
                    break
                if found is None:
                    self._homs = False
                    return None
                out.append(found)
            self._homs = out
        return self._homs or None

    def hom_basis(self, y: int, x: int) -> list[int]:
        homs = self.hom_of_basis()
        if homs is None:
            raise HopfError("basis is not aligned with the morphism spaces")
        return [i for i, h in enumerate(homs) if h == (y, x)]

    def has_cross_morphisms(self) -> bool:
        homs = self.hom_of_basis()
        if homs is None:
            raise HopfError("basis is not aligned with the morphism spaces")
        return any(y != x for y, x in homs)

    def __repr__(self):
        return f"HopfCategory(over {self.group.name}, dim={self.dim})"


def check_idempotent_family(H: HopfAlgebra, G: FiniteGroup, idem: Sequence[dict]) -> VerificationReport:
    rep = VerificationReport()
    F = H.field
    n = G.order
    bad = None
    for x in range(n):
        for y in range(n):
            p = H.mul(idem[x], idem[y])
            if p != (idem[x] if x == y else {}):
                bad = f"1_{G.labels[x]} * 1_{G.labels[y]}"
                break
        if bad:
            break
    rep.record("orthogonal idempotents", bad)
    total: dict = {}
    for e in idem:
        sv_add_into(total, e)
    rep.record("complete family", None if total == H.unit else "sum of idempotents != 1")
    bad = None
    for s in range(n):
        want: dict = {}
        for a in range(n):
            for b in range(n):
                if G.mul(a, b) == s:
                    sv_add_into(want, _tensor_of(idem[a], idem[b]))
        if H.comul(idem[s]) != want:
            bad = f"Delta(1_{G.labels[s]})"
            break
    rep.record("idempotent comultiplication", bad)
    rep.record("idempotent counit", _first(
        f"1_{G.labels[s]}" for s in range(n)
        if H.eps(idem[s]) != (F.one if s == G.identity else F.zero)))
    rep.record("idempotent antipode", _first(
        f"1_{G.labels[s]}" for s in range(n) if H.S(idem[s]) != idem[G.inverse[s]]))
    return rep


def category_from_algebra(H: HopfAlgebra) -> HopfCategory:
    """H as a Hopf category over the trivial group."""
    return HopfCategory(cyclic(1), H, [dict(H.unit)])


def trivial_hopf_category(field: Field, G: FiniteGroup) -> HopfCategory:
    H = dual_group_hopf(field, G)
    return HopfCategory(G, H, [H.basis_vector(s) for s in range(G.order)],
                        meta={"kind": "trivial", "group": G})


def taft_category(field: Field, n: int, q: Scalar, allow_nonprimitive: bool = False) -> HopfCategory:
    """The n-Taft category over C_n.

    Basis vector ``l*n + x`` is the class of the path of length l starting
    at the object t^x.  ``allow_nonprimitive`` skips the order check on q so
    that the failure of the axioms can be observed.
    """
    if n < 2:
        raise HopfError("Taft categories need n >= 2")
    q = field(q)
    if not allow_nonprimitive and q.multiplicative_order(bound=n) != n:
        raise HopfError(f"q not primitive: {q} is not a primitive {n}-th root of unity")
    one, zero = field.one, field.zero
    d = n * n

    def idx(x, l):
        return l * n + (x % n)

    labels = []
    for l in range(n):
        for x in range(n):
            labels.append(f"e[{x}]" if l == 0 else f"p[{x},{l}]")
    mult = {}
    for l1 in range(n):
        for x1 in range(n):
            # p(x1, l1) is applied after p(x0, l0) when x1 = x0 + l0
            for l0 in range(n - l1):
                x0 = (x1 - l0) % n
                mult[(idx(x1, l1), idx(x0, l0))] = {idx(x0, l0 + l1): one}
    unit = {idx(x, 0): one for x in range(n)}
    H0 = HopfAlgebra(field, labels, mult, unit, [{}] * d, [zero] * d, [{}] * d)

    comult = [dict() for _ in range(d)]
    for i in range(n):
        for j in range(n):
            comult[idx(i, 0)][(idx(j, 0), idx(i - j, 0))] = one
    gen_delta = []
    for i in range(n):
        t: dict = {}
        for j in range(n):
            k = (i - j) % n
            sv_add_into(t, {(idx(j, 0), idx(k, 1)): one})
            sv_add_into(t, {(idx(j, 1), idx(k, 0)): q ** k})
        gen_delta.append(t)
    for x in range(n):
        comult[idx(x, 1)] = gen_delta[x]
        acc = gen_delta[x]
        for l in range(2, n):
            acc = H0.tensor_mul(gen_delta[(x + l - 1) % n], acc)
            comult[idx(x, l)] = acc
    counit = [one if k == idx(0, 0) else zero for k in range(d)]
    antipode = [dict() for _ in range(d)]
    gen_S = []
    for i in range(n):
        w = (-(i + 1)) % n
        gen_S.append({idx(w, 1): -(q ** (-w))})
    for x in range(n):
        antipode[idx(x, 0)] = {idx(-x, 0): one}
        acc = gen_S[x]
        antipode[idx(x, 1)] = acc
        for l in range(2, n):
            acc = H0.mul(acc, gen_S[(x + l - 1) % n])
            antipode[idx(x, l)] = acc
    H = HopfAlgebra(field, labels, mult, unit, comult, counit, antipode,
                    meta={"kind": "taft", "n": n, "q": q})
    return HopfCategory(cyclic(n), H, [H.basis_vector(idx(x, 0)) for x in range(n)],
                        meta={"kind": "taft", "n": n, "q": q})


# ---------------------------------------------------------------------------
# Peirce category and sum algebra
# ---------------------------------------------------------------------------

def _align_basis(H: HopfAlgebra, G: FiniteGroup, idem: Sequence[dict]):
    """A basis adapted to the decomposition H = sum_{y,x} e_y H e_x, ordered
    by (source, target).  Returns (rows, homs)."""
    F = H.field
    d = H.dim
    rows, homs = [], []
    for x in range(G.order):
        for y in range(G.order):
            span = []
            for i in range(d):
                v = H.mul(H.mul(idem[y], H.basis_vector(i)), idem[x])
                if v:
                    span.append(sv_dense(v, d, F))
            red, _ = rref(span, F) if span else ([], [])
            for r in red:
                rows.append(sv_from_dense(r))
                homs.append((y, x))
    if len(rows) != d:
        raise HopfError("idempotents do not decompose the algebra")
    return rows, homs


def peirce(H: HopfAlgebra, G: FiniteGroup, idempotents: Sequence[dict]) -> HopfCategory:
    """The Hopf category over G cut out by ``idempotents``.

    When the basis of H is not adapted to the morphism spaces it is replaced
    by one that is (row reduction inside each e_y H e_x).
    """
    rep = check_idempotent_family(H, G, idempotents)
    if not rep.ok:
        raise HopfError("bad idempotent family: " + "; ".join(
            f"{k} ({v})" for k, v in rep.failures.items()))
    C = HopfCategory(G, H, idempotents, check=False)
    if C.hom_of_basis() is not None:
        return C
    rows, _ = _align_basis(H, G, idempotents)
    H2 = change_basis(H, rows)
    back = inverse([sv_dense(r, H.dim, H.field) for r in rows], H.field)
    new_idem = []
    for e in idempotents:
        out: dict = {}
        for k, c in e.items():
            sv_add_into(out, sv_from_dense(back[k]), c)
        new_idem.append(out)
    return HopfCategory(G, H2, new_idem, meta={"rebased_from": rows})


def sum_algebra(C: HopfCategory) -> HopfAlgebra:
    """Reassemble the sum algebra from the morphism-space data of C:
    composition of composable pairs, the componentwise comultiplication,
    the counit on the unit object and the antipode."""
    H = C.algebra
    homs = C.hom_of_basis()
    if homs is None:
        raise HopfError("basis is not aligned with the morphism spaces")
    F = H.field
    d = H.dim
    mult = {}
    for i in range(d):
        for j in range(d):
            if homs[i][1] != homs[j][0]:
                continue  # not composable: gf = 0
            v = H.mult.get((i, j))
            if v:
                mult[(i, j)] = dict(v)
    unit: dict = {}
    for e in C.idempotents:
        sv_add_into(unit, e)
    comult = []
    G = C.group
    for i in range(d):
        y, x = homs[i]
        part: dict = {}
        for (a, b), c in H.comult[i].items():
            ya, xa = homs[a]
            yb, xb = homs[b]
            if G.mul(ya, yb) == y and G.mul(xa, xb) == x:
                part[(a, b)] = c
        comult.append(part)
    counit = [H.counit[i] if homs[i] == (G.identity, G.identity) else F.zero for i in range(d)]
    antipode = [dict(s) for s in H.antipode]
    return HopfAlgebra(F, H.labels, mult, unit, comult, counit, antipode, meta=H.meta)


# ---------------------------------------------------------------------------
# Turaev view
# ---------------------------------------------------------------------------

@dataclass
class GCoalgebraView:
    """Family of algebras H_s with Delta_{s'',s'}: H_{s''s'} -> H_{s''} (x) H_{s'},
    a counit on H_1 and antipodes S_s: H_s -> H_{s^-1}.

    Local bases are the positions listed in ``index[s]`` (global indices of
    the originating sum algebra, kept so that the round trip is exact).
    """

    group: FiniteGroup
    field: Field
    index: dict[int, list[int]]
    labels: dict[int, list[str]]
    mult: dict[int, dict]         # s -> {(a, b): {c: scalar}} in local indices
    unit: dict[int, dict]
    comult: dict[tuple[int, int], dict]  # (s'', s') -> {a: {(b, c): scalar}}
    counit: dict                  # local index in H_1 -> scalar
    antipode: dict[int, dict]     # s -> {a: {b: scalar}} with b local to s^-1


def to_turaev(C: HopfCategory) -> GCoalgebraView:
    if C.has_cross_morphisms():
        raise HopfError("the category has morphisms between distinct objects")
    H = C.algebra
    G = C.group
    homs = C.hom_of_basis()
    index = {s: [i for i in range(H.dim) if homs[i][0] == s] for s in G.elements()}
    local = {}
    for s, idx in index.items():
        for a, i in enumerate(idx):
            local[i] = (s, a)
    mult, unit, antipode = {}, {}, {}
    for s, idx in index.items():
        m = {}
        for a, i in enumerate(idx):
            for b, j in enumerate(idx):
                v = H.mult.get((i, j))
                if v:
                    m[(a, b)] = {local[k][1]: c for k, c in v.items()}
        mult[s] = m
        unit[s] = {local[k][1]: c for k, c in C.idempotents[s].items()}
        antipode[s] = {a: {local[k][1]: c for k, c in H.antipode[i].items()}
                       for a, i in enumerate(idx)}
    comult = {}
    for s2 in G.elements():
        for s1 in G.elements():
            s = G.mul(s2, s1)
            part = {}
            for a, i in enumerate(index[s]):
                t = {}
                for (j, k), c in H.comult[i].items():
                    if local[j][0] == s2 and local[k][0] == s1:
                        t[(local[j][1], local[k][1])] = c
                part[a] = t
            comult[(s2, s1)] = part
    counit = {a: H.counit[i] for a, i in enumerate(index[G.identity])}
    return GCoalgebraView(G, H.field, index,
                          {s: [H.labels[i] for i in idx] for s, idx in index.items()},
                          mult, unit, comult, counit, antipode)


def from_turaev(view: GCoalgebraView) -> HopfCategory:
    G = view.group
    F = view.field
    d = sum(len(v) for v in view.index.values())
    labels = [""] * d
    glob = {}
    for s, idx in view.index.items():
        for a, i in enumerate(idx):
            glob[(s, a)] = i
            labels[i] = view.labels[s][a]
    mult = {}
    for s, m in view.mult.items():
        for (a, b), v in m.items():
            mult[(glob[(s, a)], glob[(s, b)])] = {glob[(s, c)]: x for c, x in v.items()}
    comult = [dict() for _ in range(d)]
    for (s2, s1), part in view.comult.items():
        s = G.mul(s2, s1)
        for a, t in part.items():
            for (b, c), x in t.items():
                comult[glob[(s, a)]][(glob[(s2, b)], glob[(s1, c)])] = x
    counit = [F.zero] * d
    for a, x in view.counit.items():
        counit[glob[(G.identity, a)]] = x
    antipode = [dict() for _ in range(d)]
    for s, part in view.antipode.items():
        si = G.inverse[s]
        for a, v in part.items():
            antipode[glob[(s, a)]] = {glob[(si, b)]: x for b, x in v.items()}
    idem = []
    unit: dict = {}
    for s in G.elements():
        e = {glob[(s, a)]: x for a, x in view.unit[s].items()}
        idem.append(e)
        sv_add_into(unit, e)
    H = HopfAlgebra(F, labels, mult, unit, comult, counit, antipode)
    return HopfCategory(G, H, idem)


# ---------------------------------------------------------------------------
# automorphisms
# ---------------------------------------------------------------------------

def _commutes(H: HopfAlgebra, J: Sequence[dict]) -> bool:
    """Whether the linear map J (columns) is a Hopf algebra map H -> H."""
    d = H.dim

    def Jt(t):
        out: dict = {}
        for (a, b), c in t.items():
            for x, u in J[a].items():
                for y, w in J[b].items():
                    sv_add_into(out, {(x, y): u * w}, c)
        return out

    if H.apply_linear(J, H.unit) != H.unit:
        return False
    for i in range(d):
        if H.comul(J[i]) != Jt(H.comult[i]):
            return False
        if H.eps(J[i]) != H.counit[i]:
            return False
        if H.S(J[i]) != H.apply_linear(J, H.antipode[i]):
            return False
        for j in range(d):
            if H.mul(J[i], J[j]) != H.apply_linear(J, H.mult.get((i, j), {})):
                return False
    return True


def hopf_automorphisms(H: HopfAlgebra, G: FiniteGroup | None = None) -> list[list[dict]]:
    """Automorphisms of k^G induced by group automorphisms sigma via
    (Jf)(x) = f(sigma(x)), as lists of columns.  The identity comes first."""
    G = G or H.meta.get("group")
    if G is None:
        raise HopfError("the underlying group is unknown")
    ref = dual_group_hopf(H.field, G)
    if not same_structure(ref, H):
        raise HopfError("algebra is not k^G on the Dirac basis")
    one = H.field.one
    out = []
    for sigma in G.automorphisms():
        inv = [0] * G.order
        for x, y in enumerate(sigma):
            inv[y] = x
        # (J delta_s)(x) = delta_s(sigma x) so J delta_s = delta_{sigma^-1 s}
        J = [{inv[s]: one} for s in range(G.order)]
        if not _commutes(H, J):
            raise HopfError("group automorphism failed to induce a Hopf map")
        out.append(J)
    ident = [{i: one} for i in range(H.dim)]
    out.sort(key=lambda J: J != ident)
    return out


def brute_force_dirac_automorphisms(H: HopfAlgebra) -> list[list[dict]]:
    """All permutations of the Dirac basis that are Hopf maps."""
    one = H.field.one
    out = []
    for perm in itertools.permutations(range(H.dim)):
        J = [{perm[i]: one} for i in range(H.dim)]
        if _commutes(H, J):
            out.append(J)
    return out


def taft_automorphisms(C: HopfCategory) -> list[list[dict]]:
    """Hopf endofunctors of a Taft category induced by automorphisms of the
    object group, found by brute force: sigma with sigma(t) = t^k sends the
    arrow at x to the path of length k at sigma(x), extended to paths by
    functoriality.  Only invertible Hopf maps are kept."""
    n = C.meta["n"]
    H = C.algebra
    one = H.field.one
    out = []
    for sigma in C.group.automorphisms():
        k = sigma[1]

        J = [None] * H.dim
        for x in range(n):
            J[x] = {sigma[x]: one}
        for l in range(1, n):
            for x in range(n):
                # p(x, l) = a_{x+l-1} ... a_x
                acc = {sigma[x]: one}
                for step in range(l):
                    y = (x + step) % n
                    arrow = {(k % n) * n + sigma[y]: one} if k < n else {}
                    acc = H.mul(arrow, acc)
                J[l * n + x] = acc
        rows = [sv_dense(J[i], H.dim, H.field) for i in range(H.dim)]
        red, piv = rref(rows, H.field)
        if len(piv) != H.dim:
            continue
        if _commutes(H, J):
            out.append(J)
    return out


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def algebra_to_json(H: HopfAlgebra) -> dict:
    def s(x):
        return str(x)

    return {
        "field": H.field.name,
        "dim": H.dim,
        "labels": list(H.labels),
        "mult": [[i, j, k, s(c)] for (i, j), v in sorted(H.mult.items())
                 for k, c in sorted(v.items())],
        "unit": [s(H.unit.get(i, H.field.zero)) for i in range(H.dim)],
        "comult": [[i, j, k, s(c)] for i in range(H.dim)
                   for (j, k), c in sorted(H.comult[i].items())],
        "counit": [s(c) for c in H.counit],
        "antipode": [[i, j, s(c)] for i in range(H.dim)
                     for j, c in sorted(H.antipode[i].items())],
    }


def algebra_from_json(data: dict) -> HopfAlgebra:
    try:
        F = parse_field(data["field"])
        d = int(data["dim"])
        labels = data.get("labels") or [f"b{i}" for i in range(d)]
        mult: dict = {}
        for i, j, k, c in data["mult"]:
            sv_add_into(mult.setdefault((int(i), int(j)), {}), {int(k): F(str(c))})
        unit = sv_from_dense([F(str(c)) for c in data["unit"]])
        comult = [dict() for _ in range(d)]
        for i, j, k, c in data["comult"]:
            sv_add_into(comult[int(i)], {(int(j), int(k)): F(str(c))})
        counit = [F(str(c)) for c in data["counit"]]
        antipode = [dict() for _ in range(d)]
        for i, j, c in data["antipode"]:
            sv_add_into(antipode[int(i)], {int(j): F(str(c))})
    except (KeyError, TypeError, IndexError) as exc:
        raise HopfError(f"malformed algebra JSON: {exc!r}") from exc
    return HopfAlgebra(F, labels, mult, unit, comult, counit, antipode)


def category_to_json(C: HopfCategory) -> dict:
    out = algebra_to_json(C.algebra)
    out["group"] = C.group.to_json()
    out["idempotents"] = {str(x): [str(e.get(i, C.field.zero)) for i in range(C.dim)]
                          for x, e in enumerate(C.idempotents)}
    return out


def category_from_json(data: dict) -> HopfCategory:
    H = algebra_from_json(data)
    try:
        G = FiniteGroup.from_json(data["group"])
        idem = [sv_from_dense([H.field(str(c)) for c in data["idempotents"][str(x)]])
                for x in range(G.order)]
    except (KeyError, TypeError) as exc:
        raise HopfError(f"malformed category JSON: {exc!r}") from exc
    return HopfCategory(G, H, idem)


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=1, sort_keys=True)
