"""Exact arithmetic in the nilradical u: strictly upper-triangular traceless
(n+1) x (n+1) matrices over F_p, stored as coefficient vectors indexed by the
canonical enumeration of positive roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from . import linalg
from .roots import (
    Root,
    check_rank,
    num_positive_roots,
    positive_roots,
    root_index,
    root_sum,
    structure_constant,
    validate_root_set,
)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Prime field and rank fixing u = n(n+1)/2-dimensional coefficient space.

    Standardness requires p not dividing n+1; pass allow_nonstandard=True to
    work outside that regime deliberately.
    """

    p: int
    n: int
    allow_nonstandard: bool = False

    def __post_init__(self) -> None:
        check_rank(self.n)
        if not _is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if (self.n + 1) % self.p == 0 and not self.allow_nonstandard:
            raise ValueError(
                f"p={self.p} divides n+1={self.n + 1}; pass "
                "allow_nonstandard=True to override"
            )

    @property
    def num_roots(self) -> int:
        return num_positive_roots(self.n)

    @property
    def dim_matrices(self) -> int:
        return self.n + 1


def smallest_standard_prime(n: int) -> int:
    """Smallest prime not dividing n+1."""
    p = 2
    while (n + 1) % p == 0:
        p += 1
        while not _is_prime(p):
            p += 1
    return p


@lru_cache(maxsize=None)
def structure_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """(sum_index, sign): for canonical root indices a, b, sum_index[a, b] is
    the canonical index of root_a + root_b (or -1) and sign[a, b] the bracket
    coefficient."""
    roots = positive_roots(n)
    idx = root_index(n)
    N = len(roots)
    sum_index = np.full((N, N), -1, dtype=np.int64)
    sign = np.zeros((N, N), dtype=np.int64)
    for a, ra in enumerate(roots):
        for b, rb in enumerate(roots):
            s = root_sum(ra, rb)
            if s is not None:
                sum_index[a, b] = idx[s]
                sign[a, b] = structure_constant(ra, rb)
    return sum_index, sign


def zero_vector(field: FieldSpec) -> np.ndarray:
    return np.zeros(field.num_roots, dtype=np.int64)


def root_vector(field: FieldSpec, root: Root) -> np.ndarray:
    v = zero_vector(field)
    v[root_index(field.n)[root]] = 1
    return v


def vector_from_coeffs(field: FieldSpec, coeffs: Mapping[Root, int]) -> np.ndarray:
    v = zero_vector(field)
    idx = root_index(field.n)
    for root, c in coeffs.items():
        root = tuple(root)
        if root not in idx:
            raise ValueError(f"{root!r} is not a positive root of A_{field.n}")
        v[idx[root]] = c % field.p
    return v


def bracket(field: FieldSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Bilinear extension of [x_a, x_b] = N(a, b) x_{a+b}."""
    sum_index, sign = structure_tables(field.n)
    prod = (np.outer(x, y) * sign) % field.p
    out = zero_vector(field)
    mask = sum_index >= 0
    np.add.at(out, sum_index[mask], prod[mask])
    return out % field.p


def to_matrix(field: FieldSpec, x: np.ndarray) -> np.ndarray:
    """Realize a coefficient vector as a strictly upper-triangular matrix."""
    M = np.zeros((field.n + 1, field.n + 1), dtype=np.int64)
    for k, (i, j) in enumerate(positive_roots(field.n)):
        M[i - 1, j - 1] = x[k] % field.p
    return M


def from_matrix(field: FieldSpec, M: np.ndarray) -> np.ndarray:
    """Inverse of to_matrix; raises when M is not strictly upper-triangular."""
    M = M % field.p
    if np.any(np.tril(M)):
        raise ValueError("matrix is not strictly upper-triangular")
    v = zero_vector(field)
    for k, (i, j) in enumerate(positive_roots(field.n)):
        v[k] = M[i - 1, j - 1]
    return v


def is_p_nilpotent(field: FieldSpec, x: np.ndarray) -> bool:
    """Test x^p = 0 on the matrix realization."""
    M = to_matrix(field, x)
    return not np.any(linalg.mat_pow(M, field.p, field.p))


def ad_matrix(field: FieldSpec, v: np.ndarray) -> np.ndarray:
    """Matrix of x -> [x, v] on u in the canonical root-vector basis."""
    N = field.num_roots
    sum_index, sign = structure_tables(field.n)
    M = np.zeros((N, N), dtype=np.int64)
    for b in range(N):
        tgt = sum_index[b]
        ok = tgt >= 0
        M[tgt[ok], b] = (sign[b][ok] * v[ok]) % field.p
    return M % field.p


def ad_matrix_check_zero_square(field: FieldSpec, v: np.ndarray) -> np.ndarray:
    """ad(v) on u, asserting its square vanishes (true for root vectors in
    type A: twice a root plus a root is never a root)."""
    M = ad_matrix(field, v)
    if np.any((M @ M) % field.p):
        raise ValueError("ad square does not vanish; series truncation invalid")
    return M


def lie_span(field: FieldSpec, R: Iterable[Root]) -> np.ndarray:
    """Basis {x_a : a in R} in canonical root order, one vector per row."""
    R = validate_root_set(field.n, R)
    idx = root_index(field.n)
    rows = sorted(idx[r] for r in R)
    basis = np.zeros((len(rows), field.num_roots), dtype=np.int64)
    for k, col in enumerate(rows):
        basis[k, col] = 1
    return basis
