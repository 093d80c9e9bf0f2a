"""Canonical echelon forms of subspaces of u, the leading-term (pivot) map,
elementarity, centralizers, and maximality among elementary subalgebras of u.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import linalg
from .errors import UsageError
from .nilradical import FieldSpec, ad_matrix, bracket, is_p_nilpotent
from .ordering import TotalOrder
from .roots import Root, positive_roots, root_index

DEFAULT_COSET_BUDGET = 10**6


@dataclass(frozen=True)
class EchelonSubspace:
    """A subspace of u in reduced echelon form with respect to an order.

    Rows of ``basis`` are coefficient vectors in canonical root indexing,
    sorted by descending pivot rank.  Each row has coefficient 1 at its pivot
    (its greatest supported root) and coefficient 0 at every other row's
    pivot; the pivot set is the subspace's leading-term set.
    """

    field: FieldSpec
    order: TotalOrder
    basis: np.ndarray
    pivots: tuple[Root, ...]

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def pivot_set(self) -> frozenset[Root]:
        return frozenset(self.pivots)

    def canonical_key(self) -> tuple:
        """Hashable canonical form; equal keys iff equal subspaces."""
        return (self.field.p, self.field.n, self.basis.tobytes(),
                self.basis.shape)

    def vectors(self) -> np.ndarray:
        return self.basis.copy()

    def contains(self, v: np.ndarray) -> bool:
        return linalg.in_row_space(self.basis, v % self.field.p, self.field.p)


def reduce_echelon(
    field: FieldSpec, order: TotalOrder, vectors: Iterable[np.ndarray]
) -> EchelonSubspace:
    """Gaussian elimination with columns taken in descending order rank.

    Dependent inputs are allowed; the result is the canonical form of their
    span and re-reduction is idempotent.
    """
    if order.n != field.n:
        raise UsageError("order and field ranks differ")
    rows = [np.asarray(v, dtype=np.int64) % field.p for v in vectors]
    N = field.num_roots
    if not rows:
        mat = np.zeros((0, N), dtype=np.int64)
    else:
        mat = np.vstack(rows)
    idx = root_index(field.n)
    col_order = [idx[r] for r in order.roots_desc()]
    R, piv_positions = linalg.rref(mat[:, col_order], field.p)
    back = np.argsort(np.asarray(col_order))
    basis = R[: len(piv_positions)][:, back]
    roots = positive_roots(field.n)
    pivots = tuple(roots[col_order[c]] for c in piv_positions)
    return EchelonSubspace(field=field, order=order, basis=basis, pivots=pivots)


def lie_subspace(
    field: FieldSpec, order: TotalOrder, R: Iterable[Root]
) -> EchelonSubspace:
    """The span of the root vectors of R, already echelon in any order."""
    from .nilradical import lie_span

    return reduce_echelon(field, order, lie_span(field, R))


def leading_terms(e: EchelonSubspace) -> frozenset[Root]:
    """The pivot set: the greatest supported root of each basis vector."""
    return e.pivot_set


def is_elementary(e: EchelonSubspace) -> bool:
    """All pairwise basis brackets vanish and every basis vector is
    p-nilpotent (which suffices for all elements of the span: p-th powers
    are additive on commuting nilpotents)."""
    b = e.basis
    for k in range(e.dim):
        for l in range(k + 1, e.dim):
            if np.any(bracket(e.field, b[k], b[l])):
                return False
    return all(is_p_nilpotent(e.field, b[k]) for k in range(e.dim))


def centralizer_in_u(e: EchelonSubspace) -> EchelonSubspace:
    """{x in u : [x, v] = 0 for all v in e}, as the kernel of the stacked
    adjoint maps of the basis vectors."""
    field = e.field
    if e.dim == 0:
        return reduce_echelon(field, e.order, np.eye(field.num_roots,
                                                     dtype=np.int64))
    stacked = np.vstack([ad_matrix(field, e.basis[k]) for k in range(e.dim)])
    kernel = linalg.nullspace(stacked, field.p)
    return reduce_echelon(field, e.order, kernel)


def _complement_in(larger: EchelonSubspace, smaller: EchelonSubspace) -> np.ndarray:
    """Rows of larger completing smaller to a basis of larger (pivot-based)."""
    small_pivots = smaller.pivot_set
    rows = [larger.basis[k] for k, piv in enumerate(larger.pivots)
            if piv not in small_pivots]
    if not rows:
        return np.zeros((0, larger.field.num_roots), dtype=np.int64)
    return np.vstack(rows)


def is_maximal_elementary(
    e: EchelonSubspace, budget: int = DEFAULT_COSET_BUDGET
) -> Optional[bool]:
    """Maximality of an elementary e among elementary subalgebras of u.

    e extends iff some x in its centralizer, outside e, is p-nilpotent; the
    p-th power is constant on cosets of e (commuting nilpotents), so one
    representative per projective coset of the complement suffices.  Returns
    None (inconclusive) only when p**codim exceeds the budget.
    """
    if not is_elementary(e):
        raise UsageError("is_maximal_elementary requires an elementary input")
    field = e.field
    c = centralizer_in_u(e)
    comp = _complement_in(c, e)
    d = comp.shape[0]
    if d == 0:
        return True
    if field.p**d > budget:
        return None
    p = field.p
    for coeffs in itertools.product(range(p), repeat=d):
        k = next((t for t, a in enumerate(coeffs) if a), None)
        if k is None or coeffs[k] != 1:
            continue  # one representative per projective point
        x = (np.asarray(coeffs, dtype=np.int64) @ comp) % p
        if is_p_nilpotent(field, x):
            return False
    return True


def extension_witness(
    e: EchelonSubspace, budget: int = DEFAULT_COSET_BUDGET
) -> Optional[np.ndarray]:
    """A p-nilpotent centralizer element outside e, or None when e is maximal.

    Raises UsageError when the coset scan would exceed the budget.
    """
    if not is_elementary(e):
        raise UsageError("extension_witness requires an elementary input")
    field = e.field
    comp = _complement_in(centralizer_in_u(e), e)
    d = comp.shape[0]
    if d == 0:
        return None
    if field.p**d > budget:
        raise UsageError(f"coset scan p**{d} exceeds budget {budget}")
    p = field.p
    for coeffs in itertools.product(range(p), repeat=d):
        k = next((t for t, a in enumerate(coeffs) if a), None)
        if k is None or coeffs[k] != 1:
            continue
        x = (np.asarray(coeffs, dtype=np.int64) @ comp) % p
        if is_p_nilpotent(field, x):
            return x
    return None
