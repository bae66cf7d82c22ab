"""Exact linear algebra over a :class:`~hopfpi1.scalars.Field`.

Dense matrices are lists of rows of Scalars.  Sparse vectors are dicts
``{index: Scalar}`` that never store zeros; they are the working format for
structure-constant computations.
"""

from __future__ import annotations

from typing import Iterable

from .scalars import Field, Scalar

SparseVec = dict


class SingularMatrixError(ArithmeticError):
    pass


# -- sparse vectors -------------------------------------------------------------

def sv_add_into(acc: dict, vec: dict, coeff: Scalar | None = None) -> dict:
    """acc += coeff * vec, in place; zero entries are dropped."""
    for k, v in vec.items():
        if coeff is not None:
            v = v * coeff
        if k in acc:
            s = acc[k] + v
            if s.is_zero():
                del acc[k]
            else:
                acc[k] = s
        elif not v.is_zero():
            acc[k] = v
    return acc


def sv_scale(vec: dict, c: Scalar) -> dict:
    if c.is_zero():
        return {}
    return {k: v * c for k, v in vec.items()}


def sv_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        if k in out:
            s = out[k] - v
            if s.is_zero():
                del out[k]
            else:
                out[k] = s
        else:
            out[k] = -v
    return out


def sv_dense(vec: dict, dim: int, field: Field) -> list[Scalar]:
    out = [field.zero] * dim
    for k, v in vec.items():
        out[k] = v
    return out


def sv_from_dense(row: Iterable[Scalar]) -> dict:
    return {i: v for i, v in enumerate(row) if not v.is_zero()}


# -- dense matrices ---------------------------------------------------------------

def identity(n: int, field: Field) -> list[list[Scalar]]:
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def transpose(m: list[list[Scalar]]) -> list[list[Scalar]]:
    return [list(col) for col in zip(*m)]


def matmul(a: list[list[Scalar]], b: list[list[Scalar]], field: Field) -> list[list[Scalar]]:
    bt = transpose(b)
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if not x.is_zero()]
        new_row = []
        for col in bt:
            acc = field.zero
            for k, x in nz:
                y = col[k]
                if not y.is_zero():
                    acc = acc + x * y
            new_row.append(acc)
        out.append(new_row)
    return out


def rref(rows: list[list[Scalar]], field: Field) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inv()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: list[list[Scalar]], field: Field) -> int:
    return len(rref(rows, field)[1])


def inverse(mat: list[list[Scalar]], field: Field) -> list[list[Scalar]]:
    n = len(mat)
    if any(len(r) != n for r in mat):
        raise ValueError("inverse of a non-square matrix")
    aug = [list(r) + e for r, e in zip(mat, identity(n, field))]
    red, piv = rref(aug, field)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise SingularMatrixError("matrix is singular")
    return [r[n:] for r in red]


def nullspace(rows: list[list[Scalar]], ncols: int, field: Field) -> list[list[Scalar]]:
    """Basis of {x : rows @ x = 0}."""
    red, piv = rref(rows, field) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [field.zero] * ncols
        x[f] = field.one
        for r, pc in zip(red, piv):
            x[pc] = -r[f]
        basis.append(x)
    return basis


def solve_in_span(basis: list[list[Scalar]], target: list[Scalar], field: Field):
    """Coefficients c with sum c_i basis_i == target, or None."""
    if not basis:
        return [] if all(x.is_zero() for x in target) else None
    n = len(basis)
    rows = [[basis[i][k] for i in range(n)] + [target[k]] for k in range(len(target))]
    red, piv = rref(rows, field)
    if n in piv:
        return None
    sol = [field.zero] * n
    for r, pc in zip(red, piv):
        sol[pc] = r[n]
    return sol
