"""Total orders on positive roots induced by a precedence of the simple roots.

The comparison rule: a beats b when, at the most-precedent simple-root
position where their coefficient vectors differ, a has the *smaller*
coefficient.  Distinct positive roots of A_n have distinct support intervals,
so ties are impossible.  Two consequences used throughout:

* translation monotonicity: adding a common root to both sides preserves
  the comparison (it depends only on the coefficient difference);
* for positive a and b with a + b a positive root, a + b sits strictly
  below b (the coefficient at the first support index of a grows).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .roots import Root, check_rank, coeff_vector, positive_roots, root_index


@dataclass(frozen=True)
class TotalOrder:
    """A strict total order on the positive roots of A_n.

    ``ranks`` is a bijection onto 0..N-1 with higher rank = greater root.
    ``precedence`` records the inducing simple-root sequence, least first.
    """

    n: int
    precedence: tuple[int, ...]
    ranks: dict[Root, int] = field(compare=False)

    @property
    def num_roots(self) -> int:
        return len(self.ranks)

    def rank(self, root: Root) -> int:
        return self.ranks[root]

    def greater(self, a: Root, b: Root) -> bool:
        return self.ranks[a] > self.ranks[b]

    def roots_desc(self) -> list[Root]:
        """Positive roots sorted greatest first."""
        return sorted(self.ranks, key=lambda r: -self.ranks[r])

    def rank_array(self) -> np.ndarray:
        """Rank of each root in canonical row-major position."""
        out = np.empty(self.num_roots, dtype=np.int64)
        for r, k in root_index(self.n).items():
            out[k] = self.ranks[r]
        return out

    def label(self) -> str:
        return "revlex:" + ",".join(str(k) for k in self.precedence)


def reverse_lex(precedence: Sequence[int], n: int) -> TotalOrder:
    """Order induced by a precedence sequence (a permutation of 1..n)."""
    check_rank(n)
    prec = tuple(precedence)
    if sorted(prec) != list(range(1, n + 1)):
        raise ValueError(f"precedence must be a permutation of 1..{n}, got {prec!r}")
    # lexicographically smaller key (coefficients read in precedence order)
    # means greater root
    keyed = sorted(
        positive_roots(n),
        key=lambda r: tuple(coeff_vector(n, r)[k - 1] for k in prec),
    )
    nroots = len(keyed)
    ranks = {r: nroots - 1 - pos for pos, r in enumerate(keyed)}
    return TotalOrder(n=n, precedence=prec, ranks=ranks)


def classification_order(n: int) -> TotalOrder:
    """The parity-dependent order the leading-term classification runs under.

    Odd n = 2m+1: alpha_{m+1} least, then alpha_1, ..., alpha_{2m+1}.
    Even n = 2m: alpha_{m+1}, then alpha_m, then alpha_1, ..., alpha_{2m}.
    """
    check_rank(n)
    if n < 2:
        raise ValueError("classification order needs n >= 2")
    m = n // 2
    if n % 2:
        prec = [m + 1] + [k for k in range(1, n + 1) if k != m + 1]
    else:
        prec = [m + 1, m] + [k for k in range(1, n + 1) if k not in (m, m + 1)]
    return reverse_lex(prec, n)


def parse_order(spec: str, n: int) -> TotalOrder:
    """Parse an order descriptor: "paper" or "revlex:3,1,2,4,5"."""
    if spec == "paper":
        return classification_order(n)
    if spec.startswith("revlex:"):
        try:
            prec = [int(tok) for tok in spec[len("revlex:"):].split(",")]
        except ValueError as exc:
            raise ValueError(f"bad order descriptor {spec!r}") from exc
        return reverse_lex(prec, n)
    raise ValueError(f"unknown order descriptor {spec!r}")


def check_stratification(order: TotalOrder, strata: Sequence[Iterable[Root]]) -> bool:
    """True iff every root of stratum k beats every root of stratum k+1.

    Strata must be pairwise disjoint; overlap is an error, not a False.
    """
    sets = [frozenset(s) for s in strata]
    for a in range(len(sets)):
        for b in range(a + 1, len(sets)):
            if sets[a] & sets[b]:
                raise ValueError("strata overlap")
    for upper, lower in zip(sets, sets[1:]):
        if not upper or not lower:
            continue
        if min(order.rank(r) for r in upper) <= max(order.rank(r) for r in lower):
            return False
    return True


def leading_root(order: TotalOrder, coeffs: np.ndarray) -> Root:
    """The greatest root carrying a nonzero coefficient (canonical indexing)."""
    nz = np.nonzero(coeffs)[0]
    if nz.size == 0:
        raise ValueError("zero vector has no leading root")
    roots = positive_roots(order.n)
    return max((roots[k] for k in nz), key=order.rank)
