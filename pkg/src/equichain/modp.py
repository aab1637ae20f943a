"""Dense linear algebra over Z/p on numpy int64 arrays.

Exact as long as ``p < 2**31`` (products stay below ``2**62``).  Used for
the spectral-sequence pages, where the total complex gets large enough that
pure-Python elimination is the bottleneck.
"""

from __future__ import annotations

import numpy as np

from .abelian import IntMatrix, check_modulus


def to_array(A: IntMatrix, p: int) -> np.ndarray:
    arr = np.array(A.tolist(), dtype=np.int64).reshape(A.rows, A.cols)
    return arr % p


def rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    check_modulus(p)
    R = np.array(A, dtype=np.int64) % p
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r] = (R[r] * inv) % p
        col = R[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            R[nzr] = (R[nzr] - np.outer(col[nzr], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A: np.ndarray, p: int) -> int:
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Columns form a basis of ``{x : A x = 0}``."""
    rows, cols = A.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    R, piv = rref(A, p)
    free = [c for c in range(cols) if c not in set(piv)]
    N = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        N[f, j] = 1
        for i, c in enumerate(piv):
            N[c, j] = (-R[i, f]) % p
    return N


def column_basis(A: np.ndarray, p: int) -> np.ndarray:
    """Independent columns of ``A`` spanning its column space."""
    if A.shape[1] == 0:
        return A
    _, piv = rref(A, p)
    return A[:, piv] % p


def span_dim(*blocks: np.ndarray, p: int) -> int:
    mats = [b for b in blocks if b.shape[1]]
    if not mats:
        return 0
    return rank(np.hstack(mats), p)


def solve(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray | None:
    """Some ``X`` with ``A X = B``, or ``None`` when a column of ``B`` is
    outside the column space."""
    rows, cols = A.shape
    k = B.shape[1]
    if cols == 0:
        return np.zeros((0, k), dtype=np.int64) if not (B % p).any() else None
    R, piv = rref(np.hstack([A, B]), p)
    if any(c >= cols for c in piv):
        return None
    X = np.zeros((cols, k), dtype=np.int64)
    for i, c in enumerate(piv):
        X[c] = R[i, cols:]
    return X % p


def complement_basis(sub: np.ndarray, space: np.ndarray, p: int) -> np.ndarray:
    """Columns of ``space`` whose classes form a basis of ``span(space)/span(sub)``."""
    if space.shape[1] == 0:
        return space
    _, piv = rref(np.hstack([sub, space]), p)
    s = sub.shape[1]
    return space[:, [c - s for c in piv if c >= s]] % p
