"""Exact linear algebra over finite fields and the rationals.

Two flavours: list-of-lists routines on field ints (small matrices over an
extension field, used by the crossed-product isomorphism) and numpy
row reduction on base-field tables (the |G| x |G| code matrices).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import SingularSystem
from .fields import FieldCtx


def identity(F: FieldCtx, n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(F: FieldCtx, A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        out_row = []
        for j in range(cols):
            acc = 0
            for t in range(inner):
                if row[t] and B[t][j]:
                    acc = F.add(acc, F.mul(row[t], B[t][j]))
            out_row.append(acc)
        out.append(out_row)
    return out


def matpow(F: FieldCtx, A: list[list[int]], e: int) -> list[list[int]]:
    out = identity(F, len(A))
    for _ in range(e):
        out = matmul(F, out, A)
    return out


def _echelon(F: FieldCtx, rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    M = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(F: FieldCtx, rows: list[list[int]]) -> int:
    return len(_echelon(F, rows)[1]) if rows else 0


def inverse(F: FieldCtx, A: list[list[int]]) -> list[list[int]]:
    n = len(A)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(A)]
    R, pivots = _echelon(F, aug)
    if pivots[:n] != list(range(n)):
        raise SingularSystem("matrix is singular")
    return [row[n:] for row in R[:n]]


def solve(F: FieldCtx, A: list[list[int]], b: list[int]) -> list[int]:
    """Unique solution of A x = b for square nonsingular A."""
    n = len(A)
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = _echelon(F, aug)
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise SingularSystem("linear system is singular or inconsistent")
    return [R[i][n] for i in range(n)]


# -- numpy row reduction over a base field -------------------------------------------


def rref(F: FieldCtx, M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F; rows sorted by pivot, zero rows dropped."""
    M = np.array(M, dtype=np.int64, copy=True)
    if M.ndim != 2:
        raise ValueError("expected a matrix")
    nrows, ncols = M.shape
    add, mul, neg, inv = F.add_table, F.mul_table, F.neg_table, F.inv_table
    prime = F.k == 1
    p = F.p
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        if prime:
            M[r] = M[r] * int(inv[M[r, c]]) % p
            factors = M[:, c].copy()
            factors[r] = 0
            hit = np.nonzero(factors)[0]
            if hit.size:
                M[hit] = (M[hit] - np.outer(factors[hit], M[r])) % p
        else:
            M[r] = mul[inv[M[r, c]], M[r]]
            factors = M[:, c].copy()
            factors[r] = 0
            for i in np.nonzero(factors)[0]:
                M[i] = add[M[i], neg[mul[factors[i], M[r]]]]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank_np(F: FieldCtx, M: np.ndarray) -> int:
    return len(rref(F, M)[1])


def in_row_space(F: FieldCtx, R: np.ndarray, pivots: list[int], v: np.ndarray) -> bool:
    """Membership test against a matrix already in RREF."""
    v = np.array(v, dtype=np.int64, copy=True)
    add, mul, neg = F.add_table, F.mul_table, F.neg_table
    for row, c in zip(R, pivots):
        f = v[c]
        if f:
            v = add[v, neg[mul[f, row]]]
    return not v.any()


def rational_rank(rows: list[list[Fraction]]) -> int:
    M = [list(r) for r in rows]
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, len(M)):
            if M[i][c] != 0:
                f = M[i][c] / M[r][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
    return r
