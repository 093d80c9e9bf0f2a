"""Type A_n root combinatorics: positive roots, brackets at the root level,
parabolic radicals, index-cut commuting sets and symmetric-group actions.

A positive root of A_n is the pair (i, j) with 1 <= i < j <= n+1, standing
for the weight-space difference between positions i and j.  All dense vector
data elsewhere in the package is indexed against ``positive_roots(n)``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Optional

Root = tuple[int, int]
Perm = tuple[int, ...]  # images of 1..n+1, 1-based values


def check_rank(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"rank must be a positive integer, got {n!r}")


def is_positive_root(n: int, root: Root) -> bool:
    i, j = root
    return 1 <= i < j <= n + 1


def check_root(n: int, root: Root) -> None:
    if not is_positive_root(n, root):
        raise ValueError(f"{root!r} is not a positive root of A_{n}")


@lru_cache(maxsize=None)
def positive_roots(n: int) -> tuple[Root, ...]:
    """All positive roots (i, j), i < j, in row-major order; n(n+1)/2 of them."""
    check_rank(n)
    return tuple((i, j) for i in range(1, n + 2) for j in range(i + 1, n + 2))


@lru_cache(maxsize=None)
def root_index(n: int) -> dict[Root, int]:
    """Position of each positive root in the canonical row-major enumeration."""
    return {r: k for k, r in enumerate(positive_roots(n))}


def num_positive_roots(n: int) -> int:
    return n * (n + 1) // 2


def simple_root(k: int) -> Root:
    return (k, k + 1)


def highest_root(n: int) -> Root:
    check_rank(n)
    return (1, n + 1)


def root_sum(a: Root, b: Root) -> Optional[Root]:
    """The positive root a + b, or None when the sum is not a root."""
    if a[1] == b[0]:
        return (a[0], b[1])
    if b[1] == a[0]:
        return (b[0], a[1])
    return None


def commutes(a: Root, b: Root) -> bool:
    """True iff a + b is not a root (2a is never a root in type A, so a
    commutes with itself)."""
    return not (a[1] == b[0] or b[1] == a[0])


def structure_constant(a: Root, b: Root) -> int:
    """Bracket coefficient in the matrix-unit model: [x_a, x_b] = N x_{a+b}.

    Fixed by [E_ij, E_kl] = d_jk E_il - d_li E_kj; values in {-1, 0, +1},
    antisymmetric, nonzero exactly when a + b is a positive root.
    """
    if a[1] == b[0]:
        return 1
    if b[1] == a[0]:
        return -1
    return 0


def support(root: Root) -> range:
    """Indices of the simple roots appearing in root (the interval [i, j))."""
    return range(root[0], root[1])


@lru_cache(maxsize=None)
def _coeff_vectors(n: int) -> dict[Root, tuple[int, ...]]:
    return {
        (i, j): tuple(1 if i <= k < j else 0 for k in range(1, n + 1))
        for (i, j) in positive_roots(n)
    }


def coeff_vector(n: int, root: Root) -> tuple[int, ...]:
    """Simple-root coefficients of a positive root (all 0/1 in type A)."""
    check_root(n, root)
    return _coeff_vectors(n)[root]


def validate_root_set(n: int, roots: Iterable[Root]) -> frozenset[Root]:
    out = frozenset(tuple(r) for r in roots)
    for r in out:
        check_root(n, r)
    return out


def crossing_roots(J: Iterable[int], n: int) -> frozenset[Root]:
    """Positive roots (i, j) with i in J and j outside J.

    J must be a nontrivial proper subset of {1, ..., n+1}; the full crossing
    set (positive and negative) is a maximal commuting subset of all roots,
    and this is its positive part.
    """
    check_rank(n)
    J = set(J)
    if not J.issubset(range(1, n + 2)):
        raise ValueError(f"J must be a subset of 1..{n + 1}")
    if not J or len(J) == n + 1:
        raise ValueError("J must be a nontrivial proper subset")
    return frozenset(
        (i, j) for i in J for j in range(1, n + 2) if j not in J and i < j
    )


def parabolic_radical(S: Iterable[int], n: int) -> frozenset[Root]:
    """Positive roots whose support meets S (S a set of simple-root indices).

    For S = {k} this is the grid {(i, j) : i <= k < j}.
    """
    check_rank(n)
    S = set(S)
    if not S.issubset(range(1, n + 1)):
        raise ValueError(f"S must be a subset of simple-root indices 1..{n}")
    return frozenset(
        (i, j) for (i, j) in positive_roots(n) if any(i <= k < j for k in S)
    )


def is_commuting_set(roots: Iterable[Root]) -> bool:
    rs = list(roots)
    return all(commutes(a, b) for k, a in enumerate(rs) for b in rs[k + 1:])


def is_ideal(R: Iterable[Root], n: int) -> bool:
    """True iff R is closed under adding any positive root inside the
    positive system."""
    R = validate_root_set(n, R)
    for a in R:
        for b in positive_roots(n):
            s = root_sum(a, b)
            if s is not None and s not in R:
                return False
    return True


# --- symmetric group S_{n+1} acting on indices -------------------------------

def check_perm(n: int, w: Perm) -> None:
    if sorted(w) != list(range(1, n + 2)):
        raise ValueError(f"{w!r} is not a permutation of 1..{n + 1}")


def identity_perm(n: int) -> Perm:
    return tuple(range(1, n + 2))


def simple_reflection(k: int, n: int) -> Perm:
    """The transposition (k, k+1) as an element of S_{n+1}."""
    if not 1 <= k <= n:
        raise ValueError(f"simple reflection index must be in 1..{n}")
    w = list(range(1, n + 2))
    w[k - 1], w[k] = w[k], w[k - 1]
    return tuple(w)


def compose_perms(a: Perm, b: Perm) -> Perm:
    """(a o b)(i) = a(b(i))."""
    return tuple(a[b[i] - 1] for i in range(len(a)))


def invert_perm(w: Perm) -> Perm:
    inv = [0] * len(w)
    for i, im in enumerate(w, start=1):
        inv[im - 1] = i
    return tuple(inv)


def weyl_apply_root(w: Perm, root: Root) -> Root:
    """Image of a positive root, normalized back to positive form."""
    a, b = w[root[0] - 1], w[root[1] - 1]
    return (a, b) if a < b else (b, a)


def weyl_apply(w: Perm, R: Iterable[Root]) -> frozenset[Root]:
    """Apply w to every index pair, normalizing each image to positive form."""
    return frozenset(weyl_apply_root(w, r) for r in R)


def weyl_image_exact(w: Perm, R: Iterable[Root]) -> Optional[frozenset[Root]]:
    """Sign-exact image of R: None when any image leaves the positive system.

    This is the action relevant to conjugacy of subsets of the positive
    system; no normalization is applied.
    """
    out = set()
    for (i, j) in R:
        a, b = w[i - 1], w[j - 1]
        if a > b:
            return None
        out.add((a, b))
    return frozenset(out)
