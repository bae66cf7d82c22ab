"""Integer matrix normal forms and finite abelian group structure from
generators.

Matrices are lists of rows of Python ints.
"""

from __future__ import annotations

from math import gcd

__all__ = [
    "smith_normal_form",
    "integer_kernel",
    "elementary_to_invariant",
    "subgroup_invariants",
    "invariants_from_elements",
    "factorize",
]


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(a: list[list[int]], nrows: int | None = None, ncols: int | None = None):
    """Return (D, P, Q) with P @ A @ Q == D, P and Q unimodular, D diagonal
    with nonnegative entries d_1 | d_2 | ...

    ``nrows``/``ncols`` are needed only for empty matrices.
    """
    m = nrows if nrows is not None else len(a)
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    d = [list(r) for r in a] if a else [[0] * n for _ in range(m)]
    P = _identity(m)
    Q = _identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        d[dst] = [x + f * y for x, y in zip(d[dst], d[src])]
        P[dst] = [x + f * y for x, y in zip(P[dst], P[src])]

    def add_col(dst, src, f):
        for row in d:
            row[dst] += f * row[src]
        for row in Q:
            row[dst] += f * row[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = d[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    add_row(i, t, -q)
                    if d[i][t]:
                        done = False
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    add_col(j, t, -q)
                    if d[t][j]:
                        done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if d[i][j] % d[t][t]), None)
                if bad is None:
                    break
                add_row(t, bad[0], 1)
                continue
            # move the smallest remaining entry of row/column t to the pivot
            cand = [(abs(d[i][t]), i, t) for i in range(t, m) if d[i][t]]
            cand += [(abs(d[t][j]), t, j) for j in range(t, n) if d[t][j]]
            _, i, j = min(cand)
            swap_rows(t, i)
            swap_cols(t, j)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            P[t] = [-x for x in P[t]]
        t += 1
    return d, P, Q


def integer_kernel(a: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis (as row vectors) of the integer kernel {x in Z^n : A x = 0}."""
    if not a:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    d, _, Q = smith_normal_form(a, ncols=ncols)
    r = sum(1 for i in range(min(len(d), ncols)) if d[i][i])
    return [[Q[row][j] for row in range(ncols)] for j in range(r, ncols)]


def elementary_to_invariant(prime_powers: list[int]) -> list[int]:
    """Combine elementary divisors (prime powers) into invariant factors
    m_1 | m_2 | ... ."""
    by_p: dict[int, list[int]] = {}
    for q in prime_powers:
        if q > 1:
            p = min(factorize(q))
            by_p.setdefault(p, []).append(q)
    width = max((len(v) for v in by_p.values()), default=0)
    out = [1] * width
    for qs in by_p.values():
        qs.sort(reverse=True)
        for k, q in enumerate(qs):
            out[width - 1 - k] *= q
    return [x for x in out if x > 1]


def _valuation(x: int, p: int, cap: int) -> int:
    if x == 0:
        return cap
    v = 0
    while x % p == 0 and v < cap:
        x //= p
        v += 1
    return v


def _local_snf_valuations(cols: list[list[int]], p: int, e: int) -> list[int]:
    """Valuations of the Smith diagonal of a matrix over Z/p^e, given as a
    list of column vectors."""
    mod = p ** e
    mat = [[x % mod for x in c] for c in cols]
    out = []
    while mat and mat[0]:
        best = None
        for ci, c in enumerate(mat):
            for ri, x in enumerate(c):
                v = _valuation(x, p, e)
                if v < e and (best is None or v < best[0]):
                    best = (v, ci, ri)
                    if v == 0:
                        break
            if best and best[0] == 0:
                break
        if best is None:
            break
        v, ci, ri = best
        out.append(v)
        piv_col = mat.pop(ci)
        unit = piv_col[ri] // p ** v
        uinv = pow(unit, -1, mod)
        new = []
        for c in mat:
            f = c[ri]
            if f:
                # f is divisible by p^v because the pivot has minimal valuation
                k = (f // p ** v) * uinv % mod
                c = [(x - k * y) % mod for x, y in zip(c, piv_col)]
            new.append(c[:ri] + c[ri + 1:])
        mat = new
    return out


def subgroup_invariants(gens: list[list[int]], moduli: list[int]) -> list[int]:
    """Invariant factors of the subgroup of Z/m_1 x ... x Z/m_r generated by
    ``gens``, computed prime by prime over Z/p^e."""
    if not moduli:
        return []
    expo = 1
    for m in moduli:
        expo = expo * m // gcd(expo, m)
    elementary = []
    for p, e in factorize(expo).items():
        cof = expo // p ** e
        coords = [(i, _valuation(m, p, 64)) for i, m in enumerate(moduli)]
        coords = [(i, a) for i, a in coords if a > 0]
        if not coords:
            continue
        cols = []
        for g in gens:
            col = []
            for i, a in coords:
                x = (g[i] * cof) % (p ** a)
                col.append(x * p ** (e - a))
            if any(col):
                cols.append(col)
        for v in _local_snf_valuations(cols, p, e):
            elementary.append(p ** (e - v))
    return elementary_to_invariant(elementary)


def invariants_from_elements(elements, add, zero) -> list[int]:
    """Invariant factors of a finite abelian group listed element by element,
    from the counts of elements killed by each prime power."""
    elems = list(elements)
    order = len(elems)

    def times(k, x):
        acc = zero
        base = x
        while k:
            if k & 1:
                acc = add(acc, base)
            base = add(base, base)
            k >>= 1
        return acc

    elementary = []
    for p, e in factorize(order).items():
        counts = [1]
        for j in range(1, e + 1):
            counts.append(sum(1 for x in elems if times(p ** j, x) == zero))
        ranks = []  # number of cyclic factors of order >= p^j
        for j in range(1, e + 1):
            ratio = counts[j] // counts[j - 1]
            r = 0
            while ratio > 1:
                ratio //= p
                r += 1
            ranks.append(r)
        ranks.append(0)
        for j in range(1, e + 1):
            elementary += [p ** j] * (ranks[j - 1] - ranks[j])
    return elementary_to_invariant(elementary)
