"""Enumeration and classification of commuting root subsets: sizes, the named
submaximal families, and the predicted-vs-computed maximal-set tables.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Optional

from .errors import BudgetExceeded, UsageError
from .roots import (
    Root,
    check_rank,
    commutes,
    crossing_roots,
    num_positive_roots,
    parabolic_radical,
    positive_roots,
)

DEFAULT_NODE_BUDGET = 10**8


def p_rank(n: int) -> int:
    """Largest size of a commuting set of positive roots: (m+1)^2 for
    n = 2m+1 and m(m+1) for n = 2m."""
    check_rank(n)
    m = n // 2
    return (m + 1) ** 2 if n % 2 else m * (m + 1)


def size_equation_solutions(n: int, target: int) -> set[int]:
    """All s in 1..n with s(n+1-s) = target (sizes of full crossing sets)."""
    check_rank(n)
    return {s for s in range(1, n + 1) if s * (n + 1 - s) == target}


def named_root_set(tag: str, n: int) -> frozenset[Root]:
    """Resolve a named commuting set: "rad:k", "odd", "ev-low", "ev-high".

    "odd" needs n = 2m+1; the "ev-*" tags need n = 2m.  The odd/even sets are
    the positive parts of the crossing sets for J = {1..m, m+2} and
    J = {1..m-1, m+1} respectively.
    """
    check_rank(n)
    m = n // 2
    if tag.startswith("rad:"):
        try:
            k = int(tag.split(":", 1)[1])
        except ValueError as exc:
            raise UsageError(f"bad named set {tag!r}") from exc
        if not 1 <= k <= n:
            raise UsageError(f"rad index must be in 1..{n}")
        return parabolic_radical({k}, n)
    if tag == "odd":
        if n % 2 == 0 or m < 1:
            raise UsageError(f"'odd' requires odd n >= 3, got n={n}")
        return crossing_roots(set(range(1, m + 1)) | {m + 2}, n)
    if tag == "ev-high":
        if n % 2 or m < 1:
            raise UsageError(f"'ev-high' requires even n >= 2, got n={n}")
        return crossing_roots(set(range(1, m + 1)) | {m + 2}, n)
    if tag == "ev-low":
        if n % 2 or m < 1:
            raise UsageError(f"'ev-low' requires even n >= 2, got n={n}")
        return crossing_roots(set(range(1, m)) | {m + 1}, n)
    raise UsageError(f"unknown named set {tag!r}")


def predicted_max_sets(n: int, level: str) -> list[tuple[str, frozenset[Root]]]:
    """Named sets predicted for level "max" (size rk) or "submax" (rk - 1)."""
    check_rank(n)
    if n < 2:
        raise UsageError("tables need n >= 2")
    m = n // 2
    if level == "max":
        if n % 2:
            tags = [f"rad:{m + 1}"]
        else:
            tags = [f"rad:{m + 1}", f"rad:{m}"]
    elif level == "submax":
        if n % 2:
            tags = [f"rad:{m}", f"rad:{m + 2}", "odd"]
        else:
            tags = ["ev-high", "ev-low"]
    else:
        raise UsageError(f"level must be 'max' or 'submax', got {level!r}")
    return [(tag, named_root_set(tag, n)) for tag in tags]


@lru_cache(maxsize=None)
def commuting_masks(n: int) -> tuple[int, ...]:
    """Bitmask over canonical root indices: mask[a] has bit b set iff root a
    commutes with root b (a != b)."""
    roots = positive_roots(n)
    N = len(roots)
    masks = [0] * N
    for a in range(N):
        for b in range(N):
            if a != b and commutes(roots[a], roots[b]):
                masks[a] |= 1 << b
    return tuple(masks)


def enumerate_commuting(
    n: int,
    r: int,
    maximal_only: bool = False,
    budget: int = DEFAULT_NODE_BUDGET,
) -> list[frozenset[Root]]:
    """All pairwise-commuting r-subsets of the positive roots, in canonical
    (lexicographic by root index) order.

    With maximal_only, keep only subsets admitting no commuting single-root
    extension.  The DFS counts visited nodes against the budget and refuses
    (raises BudgetExceeded) rather than returning a truncated answer.
    """
    check_rank(n)
    N = num_positive_roots(n)
    if not 0 <= r <= N:
        raise UsageError(f"r must be in 0..{N}")
    roots = positive_roots(n)
    masks = commuting_masks(n)
    full = (1 << N) - 1
    out: list[frozenset[Root]] = []
    nodes = 0

    def bits(mask: int) -> list[int]:
        got = []
        while mask:
            low = mask & -mask
            got.append(low.bit_length() - 1)
            mask ^= low
        return got

    def dfs(chosen: list[int], cand: int, common: int) -> None:
        """cand: indices above the last choice commuting with all chosen;
        common: every index commuting with all chosen (members drop out of
        their own masks, so common == 0 at a leaf means maximal)."""
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(
                f"enumeration for n={n}, r={r} exceeded {budget} nodes"
            )
        if len(chosen) == r:
            if not maximal_only or common == 0:
                out.append(frozenset(roots[k] for k in chosen))
            return
        if bin(cand).count("1") < r - len(chosen):
            return
        for v in bits(cand):
            dfs(
                chosen + [v],
                cand & masks[v] & ~((1 << (v + 1)) - 1),
                common & masks[v],
            )

    dfs([], full, full)
    return out


def is_maximal_commuting(R: Iterable[Root], n: int) -> bool:
    """No positive root outside R commutes with everything in R."""
    R = frozenset(R)
    for gamma in positive_roots(n):
        if gamma in R:
            continue
        if all(commutes(gamma, a) for a in R):
            return False
    return True


def max_commuting_size(n: int, budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Maximum clique size of the commuting graph, by branch and bound."""
    check_rank(n)
    N = num_positive_roots(n)
    masks = commuting_masks(n)
    best = 0
    nodes = 0

    def expand(cand: int, size: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"max-clique search for n={n} exceeded budget")
        if not cand:
            best = max(best, size)
            return
        while cand:
            if size + bin(cand).count("1") <= best:
                return
            v = cand.bit_length() - 1
            cand &= ~(1 << v)
            expand(cand & masks[v], size + 1)

    expand((1 << N) - 1, 0)
    return best


def max_table(
    n: int,
    level: str,
    budget: int = DEFAULT_NODE_BUDGET,
    compute: bool = True,
) -> dict:
    """Predicted maximal sets for the level, with brute-force cross-check.

    Returns a plain dict ready for serialization: predicted and computed
    families (as sorted root lists) plus a match flag.  With compute=False,
    or when the enumeration refuses its budget, only the prediction is
    reported and match is None.
    """
    predicted = predicted_max_sets(n, level)
    r = p_rank(n) if level == "max" else p_rank(n) - 1
    computed: Optional[list[frozenset[Root]]] = None
    refused = False
    if compute:
        try:
            computed = enumerate_commuting(n, r, maximal_only=True,
                                           budget=budget)
        except BudgetExceeded:
            refused = True
    report = {
        "type": f"A{n}",
        "n": n,
        "level": level,
        "r": r,
        "predicted": [
            {"name": tag, "roots": sorted(rs)} for tag, rs in predicted
        ],
    }
    if computed is None:
        report["computed"] = None
        report["match"] = None
        report["budget_exceeded"] = refused
    else:
        report["computed"] = [sorted(rs) for rs in sorted(computed, key=sorted)]
        report["match"] = {rs for _, rs in predicted} == set(computed)
        report["budget_exceeded"] = False
    return report
