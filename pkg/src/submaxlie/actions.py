"""Automorphisms acting on u and its subspaces.

Every generator is stored as an invertible (n+1) x (n+1) matrix g over F_p
acting by conjugation V -> g V g^{-1} on the matrix realization, together
with a provenance trace.  On u this recovers the familiar generators:

* exp_ad(a, alpha) = 1 + a . ad(x_alpha)   (the square of ad(x_alpha)
  vanishes on u in type A, so the exponential series stops after the linear
  term and no division ever happens);
* torus scalings x_(i,j) -> d_i / d_j . x_(i,j);
* Weyl elements as permutation matrices, accepted on a subspace only when
  the conjugated space stays inside u.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import linalg
from .errors import UsageError
from .nilradical import (
    FieldSpec,
    ad_matrix_check_zero_square,
    from_matrix,
    root_vector,
    to_matrix,
)
from .ordering import TotalOrder
from .roots import (
    Perm,
    Root,
    check_perm,
    check_root,
    positive_roots,
    root_index,
    weyl_image_exact,
)
from .subspaces import EchelonSubspace, reduce_echelon


@dataclass(frozen=True)
class Automorphism:
    """Conjugation by an invertible matrix g, with generator provenance."""

    field: FieldSpec
    g: np.ndarray
    trace: tuple[dict, ...]

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other (matrices multiply)."""
        if self.field != other.field:
            raise UsageError("field mismatch")
        return Automorphism(
            field=self.field,
            g=(self.g @ other.g) % self.field.p,
            trace=self.trace + other.trace,
        )

    def inverse(self) -> "Automorphism":
        return Automorphism(
            field=self.field,
            g=linalg.inv(self.g, self.field.p),
            trace=({"inverse_of": list(self.trace)},),
        )

    def conjugate_matrix(self, V: np.ndarray) -> np.ndarray:
        p = self.field.p
        return (self.g @ V @ linalg.inv(self.g, p)) % p


def identity_aut(field: FieldSpec) -> Automorphism:
    return Automorphism(
        field=field,
        g=np.eye(field.n + 1, dtype=np.int64),
        trace=(),
    )


def exp_ad(field: FieldSpec, a: int, alpha: Root) -> Automorphism:
    """The unipotent automorphism 1 + a . ad(x_alpha) of u.

    Asserts that ad(x_alpha)^2 vanishes on u, which guards the truncation of
    the exponential series.
    """
    check_root(field.n, alpha)
    ad_matrix_check_zero_square(field, root_vector(field, alpha))
    g = np.eye(field.n + 1, dtype=np.int64)
    g[alpha[0] - 1, alpha[1] - 1] = a % field.p
    return Automorphism(
        field=field,
        g=g,
        trace=({"exp_ad": {"a": a % field.p, "root": f"{alpha[0]}-{alpha[1]}"}},),
    )


def torus(field: FieldSpec, diag: Iterable[int]) -> Automorphism:
    """Conjugation by an invertible diagonal matrix."""
    d = [x % field.p for x in diag]
    if len(d) != field.n + 1 or any(x == 0 for x in d):
        raise UsageError(f"torus needs {field.n + 1} nonzero entries")
    return Automorphism(
        field=field,
        g=np.diag(np.asarray(d, dtype=np.int64)),
        trace=({"torus": d},),
    )


def weyl(field: FieldSpec, w: Perm) -> Automorphism:
    """Conjugation by the permutation matrix of w in S_{n+1}."""
    check_perm(field.n, w)
    g = np.zeros((field.n + 1, field.n + 1), dtype=np.int64)
    for i, im in enumerate(w, start=1):
        g[im - 1, i - 1] = 1
    return Automorphism(field=field, g=g, trace=({"weyl": list(w)},))


def apply_to_vector(aut: Automorphism, x: np.ndarray) -> np.ndarray:
    """Image of a u-vector; raises when conjugation leaves u."""
    V = to_matrix(aut.field, x)
    return from_matrix(aut.field, aut.conjugate_matrix(V))


def apply(aut: Automorphism, e: EchelonSubspace) -> EchelonSubspace:
    """Image subspace, re-echelonized; raises when the image leaves u."""
    if aut.field != e.field:
        raise UsageError("field mismatch")
    try:
        rows = [apply_to_vector(aut, e.basis[k]) for k in range(e.dim)]
    except ValueError as exc:
        raise UsageError(f"image subspace leaves u: {exc}") from exc
    return reduce_echelon(e.field, e.order, rows)


def on_u_matrix(aut: Automorphism) -> np.ndarray:
    """Matrix of the action on u in the root-vector basis; raises when the
    automorphism does not preserve u."""
    field = aut.field
    N = field.num_roots
    M = np.zeros((N, N), dtype=np.int64)
    for b, root in enumerate(positive_roots(field.n)):
        M[:, b] = apply_to_vector(aut, root_vector(field, root))
    return M


def random_unipotent(
    field: FieldSpec, seed: int, with_torus: bool = False
) -> Automorphism:
    """Deterministic-from-seed product of exp_ad over all positive roots in
    canonical sweep order, optionally composed with a torus scaling."""
    rng = np.random.default_rng(seed)
    aut = identity_aut(field)
    for root in positive_roots(field.n):
        t = int(rng.integers(0, field.p))
        if t:
            aut = aut.compose(exp_ad(field, t, root))
    if with_torus:
        diag = [int(rng.integers(1, field.p)) for _ in range(field.n + 1)]
        aut = aut.compose(torus(field, diag))
    return aut


def _degree_profile(R: frozenset[Root], n: int) -> list[tuple[int, int]]:
    out_deg = [0] * (n + 2)
    in_deg = [0] * (n + 2)
    for (i, j) in R:
        out_deg[i] += 1
        in_deg[j] += 1
    return [(out_deg[v], in_deg[v]) for v in range(1, n + 2)]


def weyl_conjugacy_search(
    n: int,
    R1: Iterable[Root],
    R2: Iterable[Root],
    exhaustive: bool = False,
) -> Optional[Perm]:
    """A permutation w with w.R1 = R2 sign-exactly (every image positive), or
    None when no such w exists.

    The default search backtracks over vertex images with out/in-degree
    pruning and is complete; exhaustive=True scans all of S_{n+1} instead
    (exact fallback, reasonable up to n = 8).
    """
    A = frozenset(tuple(r) for r in R1)
    B = frozenset(tuple(r) for r in R2)
    for r in A | B:
        check_root(n, r)
    if len(A) != len(B):
        return None

    if exhaustive:
        for w in itertools.permutations(range(1, n + 2)):
            if all((w[i - 1], w[j - 1]) in B for (i, j) in A):
                return w
        return None

    prof_a = _degree_profile(A, n)
    prof_b = _degree_profile(B, n)
    if sorted(prof_a) != sorted(prof_b):
        return None
    out_adj: dict[int, set[int]] = {v: set() for v in range(1, n + 2)}
    for (i, j) in A:
        out_adj[i].add(j)
    # assign images for vertices in decreasing degree order
    verts = sorted(range(1, n + 2), key=lambda v: (-prof_a[v - 1][0] - prof_a[v - 1][1], v))
    image: dict[int, int] = {}
    used = [False] * (n + 2)

    def consistent(v: int, iv: int) -> bool:
        if prof_a[v - 1] != prof_b[iv - 1]:
            return False
        for u, iu in image.items():
            if v in out_adj[u] and (iu, iv) not in B:
                return False
            if u in out_adj[v] and (iv, iu) not in B:
                return False
        return True

    def backtrack(k: int) -> Optional[Perm]:
        if k == len(verts):
            w = tuple(image[v] for v in range(1, n + 2))
            if weyl_image_exact(w, A) == B:
                return w
            return None
        v = verts[k]
        for iv in range(1, n + 2):
            if used[iv] or not consistent(v, iv):
                continue
            image[v] = iv
            used[iv] = True
            got = backtrack(k + 1)
            if got is not None:
                return got
            del image[v]
            used[iv] = False
        return None

    return backtrack(0)
