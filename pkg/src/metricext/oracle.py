"""
Classical dense-matrix algebra used as an independent verification oracle.

Nothing here touches the exterior algebra or the extensor code, so agreement
between the two is evidence rather than tautology.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

import numpy as np

from .errors import DimensionCapError, SchemaError, SingularMatrixError

LEIBNIZ_MAX_DIM = 8
PIVOT_RTOL = 1e-12


def as_square(M) -> np.ndarray:
    A = np.array(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise SchemaError(f"expected a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise SchemaError("matrix entries must be finite")
    return A


@lru_cache(maxsize=None)
def _permutation_table(n: int):
    perms = np.array(list(permutations(range(n))), dtype=np.intp)
    # parity from inversion counts
    inv = np.zeros(len(perms), dtype=np.intp)
    for i in range(n):
        for j in range(i + 1, n):
            inv += perms[:, i] > perms[:, j]
    signs = np.where(inv % 2 == 0, 1.0, -1.0)
    perms.setflags(write=False)
    signs.setflags(write=False)
    return perms, signs


def leibniz_det(M) -> float:
    """Signed permutation sum ``sum_s eps(s) M[0,s0] ... M[n-1,s_{n-1}]``.

    Costs O(n! n); capped at n = 8.
    """
    A = as_square(M)
    n = A.shape[0]
    if n > LEIBNIZ_MAX_DIM:
        raise DimensionCapError(f"leibniz_det is capped at n={LEIBNIZ_MAX_DIM}, got {n}")
    perms, signs = _permutation_table(n)
    terms = A[np.arange(n), perms].prod(axis=1)
    return float(signs @ terms)


def _lu_inplace(A: np.ndarray):
    """Row-pivoted elimination. Returns (LU, row order, sign of the permutation)."""
    n = A.shape[0]
    scale = np.abs(A).max()
    order = np.arange(n)
    sign = 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(A[k:, k])))
        if abs(A[p, k]) <= PIVOT_RTOL * scale or scale == 0.0:
            raise SingularMatrixError(
                f"matrix is singular to working precision (pivot {A[p, k]!r} at column {k})",
                value=float(A[p, k]),
            )
        if p != k:
            A[[k, p]] = A[[p, k]]
            order[[k, p]] = order[[p, k]]
            sign = -sign
        A[k + 1:, k] /= A[k, k]
        A[k + 1:, k + 1:] -= np.outer(A[k + 1:, k], A[k, k + 1:])
    return A, order, sign


def _lu_solve(LU: np.ndarray, order: np.ndarray, B: np.ndarray) -> np.ndarray:
    n = LU.shape[0]
    X = B[order].astype(float)
    for k in range(n):
        X[k + 1:] -= np.outer(LU[k + 1:, k], X[k])
    for k in range(n - 1, -1, -1):
        X[k] -= LU[k, k + 1:] @ X[k + 1:]
        X[k] /= LU[k, k]
    return X


def pivot_det(M) -> float:
    """Determinant as the signed product of elimination pivots (0 for singular input)."""
    A = as_square(M).copy()
    try:
        LU, _, sign = _lu_inplace(A)
    except SingularMatrixError:
        return 0.0
    return float(sign * np.prod(np.diag(LU)))


def gauss_inverse(M) -> np.ndarray:
    A = as_square(M)
    LU, order, _ = _lu_inplace(A.copy())
    return _lu_solve(LU, order, np.eye(A.shape[0]))


def solve(M, rhs) -> np.ndarray:
    A = as_square(M)
    b = np.array(rhs, dtype=float)
    if b.shape[0] != A.shape[0]:
        raise SchemaError(f"rhs has {b.shape[0]} rows, matrix has {A.shape[0]}")
    LU, order, _ = _lu_inplace(A.copy())
    if b.ndim == 1:
        return _lu_solve(LU, order, b[:, None])[:, 0]
    return _lu_solve(LU, order, b)
