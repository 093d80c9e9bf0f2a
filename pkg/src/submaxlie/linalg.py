"""Exact linear algebra over a prime field F_p on int64 numpy arrays.

All routines keep entries reduced to 0..p-1 and never touch floats.
"""

from __future__ import annotations

import numpy as np


def mod_p(A: np.ndarray, p: int) -> np.ndarray:
    return np.asarray(A, dtype=np.int64) % p


def rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p; returns (R, pivot_columns)."""
    R = mod_p(A, p).copy()
    rows, cols = R.shape
    piv_cols: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hit = None
        for i in range(r, rows):
            if R[i, c]:
                hit = i
                break
        if hit is None:
            continue
        if hit != r:
            R[[r, hit]] = R[[hit, r]]
        R[r] = (R[r] * pow(int(R[r, c]), -1, p)) % p
        for i in range(rows):
            if i != r and R[i, c]:
                R[i] = (R[i] - R[i, c] * R[r]) % p
        piv_cols.append(c)
        r += 1
    return R, piv_cols


def rank(A: np.ndarray, p: int) -> int:
    if A.size == 0:
        return 0
    _, piv = rref(A, p)
    return len(piv)


def nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right nullspace of A over F_p, one vector per row."""
    A = mod_p(A, p)
    m, n = A.shape
    R, piv_cols = rref(A, p)
    piv_set = set(piv_cols)
    free = [c for c in range(n) if c not in piv_set]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, pc in enumerate(piv_cols):
            basis[k, pc] = (-R[row, f]) % p
    return basis


def inv(A: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix over F_p; raises on singular input."""
    A = mod_p(A, p)
    m, n = A.shape
    if m != n:
        raise ValueError("matrix must be square")
    aug = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    R, piv = rref(aug, p)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular mod p")
    return R[:, n:]


def mat_pow(A: np.ndarray, k: int, p: int) -> np.ndarray:
    """A**k over F_p by repeated squaring."""
    A = mod_p(A, p)
    out = np.eye(A.shape[0], dtype=np.int64)
    while k:
        if k & 1:
            out = (out @ A) % p
        A = (A @ A) % p
        k >>= 1
    return out


def in_row_space(A: np.ndarray, v: np.ndarray, p: int) -> bool:
    """True iff v lies in the row space of A over F_p."""
    if A.size == 0:
        return not np.any(mod_p(v, p))
    stacked = np.vstack([A, v])
    return rank(stacked, p) == rank(A, p)
