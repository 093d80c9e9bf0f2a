"""Exhaustive determination of LT fibers: every elementary subalgebra of u
whose reduced echelon basis has a prescribed pivot (leading-term) set.

The echelon shape is derived from the total order alone: the row with pivot
pi carries one unknown coefficient for every non-pivot root strictly below
pi.  Vanishing of all pairwise brackets gives quadratic constraints over
F_p; vanishing of p-th matrix powers adds degree-p constraints whenever the
support digraph of a row admits a path of length p.  The search runs a DFS
over the unknowns with unit propagation: any constraint reduced to a single
unknown is solved immediately, contradictions prune, and solutions are
re-verified independently of the search.

The replay strategy instead executes the elimination scripts of the five
classification shapes (rad:k, odd, ev-low, ev-high): each scripted step
names one bracket coordinate, checks that it is an affine function of a
single unknown with zero constant term, and concludes that the unknown
vanishes.  The one-parameter shapes normalize a designated coefficient to
zero first, which is justified by an explicit symbolic check that the
corresponding exp_ad conjugation shifts that coefficient affinely while
fixing the echelon pattern.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .actions import apply, exp_ad
from .commuting import named_root_set, p_rank
from .errors import BudgetExceeded, UsageError
from .nilradical import FieldSpec, vector_from_coeffs
from .ordering import TotalOrder, classification_order
from .roots import (
    Root,
    is_commuting_set,
    root_sum,
    simple_root,
    structure_constant,
    validate_root_set,
)
from .subspaces import (
    EchelonSubspace,
    extension_witness,
    is_elementary,
    is_maximal_elementary,
    leading_terms,
    lie_subspace,
    reduce_echelon,
)

DEFAULT_SOLVER_BUDGET = 10**7

Poly = dict[tuple[int, ...], int]  # monomial (sorted var ids) -> coeff


@dataclass(frozen=True)
class FiberProblem:
    field: FieldSpec
    order: TotalOrder
    pivots: frozenset[Root]
    strategy: str = "search"

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "pivots", validate_root_set(self.field.n, self.pivots)
        )
        if not is_commuting_set(self.pivots):
            raise UsageError("pivot set is not pairwise commuting")
        if len(self.pivots) > p_rank(self.field.n):
            raise UsageError("more pivots than the maximal commuting size")
        if self.strategy not in ("search", "replay"):
            raise UsageError(f"unknown strategy {self.strategy!r}")


@dataclass
class SolutionSet:
    problem: FiberProblem
    solutions: list[EchelonSubspace]
    complete: bool
    nodes: int
    propagations: int
    replay_log: Optional[list[dict]] = None

    def canonical_keys(self) -> set[tuple]:
        return {e.canonical_key() for e in self.solutions}


@dataclass(frozen=True)
class FamilySpec:
    """Predicted fiber: Lie(base) conjugated by exp_ad(a, conj_root) over all
    a (one-parameter), or the singleton Lie(base)."""

    base: frozenset[Root]
    conj_root: Optional[Root] = None  # None = singleton

    def members(
        self, field: FieldSpec, order: TotalOrder
    ) -> list[EchelonSubspace]:
        base = lie_subspace(field, order, self.base)
        if self.conj_root is None:
            return [base]
        return [
            apply(exp_ad(field, a, self.conj_root), base)
            for a in range(field.p)
        ]


# --- echelon parametrization --------------------------------------------------

class _Shape:
    """Rows and unknown slots of the echelon parametrization."""

    def __init__(self, problem: FiberProblem):
        order = problem.order
        pos = {r: k for k, r in enumerate(order.roots_desc())}
        self.pivots = sorted(problem.pivots, key=lambda r: pos[r])
        nonpiv = [r for r in order.roots_desc() if r not in problem.pivots]
        self.row_of = {piv: k for k, piv in enumerate(self.pivots)}
        self.slots: list[list[tuple[Root, Optional[int]]]] = []
        self.varmap: dict[tuple[int, Root], int] = {}
        for k, piv in enumerate(self.pivots):
            row: list[tuple[Root, Optional[int]]] = [(piv, None)]
            for b in nonpiv:
                if pos[b] > pos[piv]:
                    vid = len(self.varmap)
                    self.varmap[(k, b)] = vid
                    row.append((b, vid))
            self.slots.append(row)
        self.num_vars = len(self.varmap)
        self.var_slot = {vid: slot for slot, vid in self.varmap.items()}

    def var_id(self, pivot: Root, root: Root) -> int:
        return self.varmap[(self.row_of[pivot], root)]

    def vectors(
        self, field: FieldSpec, assignment: dict[int, int]
    ) -> list[np.ndarray]:
        out = []
        for k, piv in enumerate(self.pivots):
            coeffs = {piv: 1}
            for (b, vid) in self.slots[k][1:]:
                coeffs[b] = assignment[vid]
            out.append(vector_from_coeffs(field, coeffs))
        return out

    def bracket_coordinate(
        self, k: int, l: int, coord: Root, p: int
    ) -> Poly:
        """Polynomial giving the coord coefficient of [row_k, row_l]."""
        poly: Poly = {}
        for (ra, va) in self.slots[k]:
            for (rb, vb) in self.slots[l]:
                if root_sum(ra, rb) != coord:
                    continue
                c = structure_constant(ra, rb)
                mono = tuple(sorted(v for v in (va, vb) if v is not None))
                poly[mono] = (poly.get(mono, 0) + c) % p
        return {m: c for m, c in poly.items() if c}

    def bracket_constraints(self, p: int) -> list[Poly]:
        cons = []
        for k in range(len(self.pivots)):
            for l in range(k + 1, len(self.pivots)):
                coords: dict[Root, Poly] = {}
                for (ra, va) in self.slots[k]:
                    for (rb, vb) in self.slots[l]:
                        s = root_sum(ra, rb)
                        if s is None:
                            continue
                        c = structure_constant(ra, rb)
                        mono = tuple(
                            sorted(v for v in (va, vb) if v is not None)
                        )
                        d = coords.setdefault(s, {})
                        d[mono] = (d.get(mono, 0) + c) % p
                for poly in coords.values():
                    poly = {m: c for m, c in poly.items() if c}
                    if poly:
                        cons.append(poly)
        return cons

    def power_constraints(self, field: FieldSpec) -> list[Poly]:
        """Entries of row^p as polynomials, for rows whose support digraph
        admits a path of length p (otherwise the constraint is vacuous)."""
        p = field.p
        cons: list[Poly] = []
        for row in self.slots:
            adj: dict[int, list[int]] = {}
            for ((i, j), _) in row:
                adj.setdefault(i, []).append(j)
            memo: dict[int, int] = {}

            def longest(v: int) -> int:
                if v not in memo:
                    memo[v] = max(
                        (1 + longest(w) for w in adj.get(v, [])), default=0
                    )
                return memo[v]

            if max((longest(v) for v in range(1, field.n + 2)), default=0) < p:
                continue
            mat: dict[tuple[int, int], Poly] = {}
            for ((i, j), vid) in row:
                mono = () if vid is None else (vid,)
                mat[(i, j)] = {mono: 1}
            power = mat
            for _ in range(p - 1):
                power = _poly_mat_mult(power, mat, p)
            for poly in power.values():
                if poly:
                    cons.append(dict(poly))
        return cons


def _poly_mat_mult(
    A: dict[tuple[int, int], Poly], B: dict[tuple[int, int], Poly], p: int
) -> dict[tuple[int, int], Poly]:
    C: dict[tuple[int, int], Poly] = {}
    by_row: dict[int, list[tuple[int, Poly]]] = {}
    for (i, j), poly in B.items():
        by_row.setdefault(i, []).append((j, poly))
    for (i, j), pa in A.items():
        for (l, pb) in by_row.get(j, []):
            tgt = C.setdefault((i, l), {})
            for ma, ca in pa.items():
                for mb, cb in pb.items():
                    mono = tuple(sorted(ma + mb))
                    tgt[mono] = (tgt.get(mono, 0) + ca * cb) % p
    return {
        key: {m: c for m, c in poly.items() if c}
        for key, poly in C.items()
        if any(poly.values())
    }


# --- constraint engine ---------------------------------------------------------

def _substitute(poly: Poly, var: int, val: int, p: int) -> Poly:
    out: Poly = {}
    for mono, c in poly.items():
        cnt = mono.count(var)
        if cnt:
            c = (c * pow(val, cnt, p)) % p
            mono = tuple(m for m in mono if m != var)
        out[mono] = (out.get(mono, 0) + c) % p
    return {m: c for m, c in out.items() if c}


def _poly_vars(poly: Poly) -> set[int]:
    return {v for mono in poly for v in mono}


def _single_var_roots(poly: Poly, var: int, p: int) -> list[int]:
    return [
        t
        for t in range(p)
        if sum(c * pow(t, len(m), p) for m, c in poly.items()) % p == 0
    ]


class _Search:
    def __init__(self, problem: FiberProblem, budget: int):
        self.problem = problem
        self.shape = _Shape(problem)
        self.p = problem.field.p
        self.budget = budget
        self.nodes = 0
        self.propagations = 0
        self.assignments: list[dict[int, int]] = []

    def initial_constraints(self) -> list[Poly]:
        cons = self.shape.bracket_constraints(self.p)
        cons += self.shape.power_constraints(self.problem.field)
        return cons

    def run(self) -> None:
        self._search(self.initial_constraints(), {})

    def _propagate(
        self, cons: list[Poly], assign: dict[int, int]
    ) -> Optional[tuple[list[Poly], dict[int, int]]]:
        p = self.p
        while True:
            forced: Optional[tuple[int, int]] = None
            for poly in cons:
                vs = _poly_vars(poly)
                if not vs:
                    if poly:
                        return None  # nonzero constant: contradiction
                    continue
                if len(vs) == 1:
                    u = next(iter(vs))
                    roots_ = _single_var_roots(poly, u, p)
                    if not roots_:
                        return None
                    if len(roots_) == 1:
                        forced = (u, roots_[0])
                        break
            if forced is None:
                return [c for c in cons if c], assign
            u, val = forced
            self.propagations += 1
            assign = {**assign, u: val}
            cons = [_substitute(c, u, val, p) for c in cons]

    def _search(self, cons: list[Poly], assign: dict[int, int]) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(
                f"fiber search exceeded {self.budget} nodes"
            )
        got = self._propagate(cons, assign)
        if got is None:
            return
        cons, assign = got
        pending = [c for c in cons if _poly_vars(c)]
        if not pending:
            free = [v for v in range(self.shape.num_vars) if v not in assign]
            count = self.p ** len(free)
            if self.nodes + count > self.budget:
                raise BudgetExceeded(
                    f"fiber search exceeded {self.budget} nodes "
                    f"(free enumeration of {count})"
                )
            self.nodes += count if free else 0
            for combo in itertools.product(range(self.p), repeat=len(free)):
                full = dict(assign)
                full.update(zip(free, combo))
                self.assignments.append(full)
            return
        branch_on = min(pending, key=lambda c: len(_poly_vars(c)))
        u = min(_poly_vars(branch_on))
        for val in range(self.p):
            self._search(
                [_substitute(c, u, val, self.p) for c in cons],
                {**assign, u: val},
            )


def lt_fiber(problem: FiberProblem, budget: int = DEFAULT_SOLVER_BUDGET) -> SolutionSet:
    """All elementary subalgebras of u with the prescribed leading-term set.

    Solutions are canonicalized, sorted, and re-verified (elementary with the
    right pivots) independently of the search.  On budget exhaustion the
    result carries complete=False and whatever was found so far.
    """
    if problem.strategy == "replay":
        from .replay import replay_fiber

        return replay_fiber(problem)
    search = _Search(problem, budget)
    complete = True
    try:
        search.run()
    except BudgetExceeded:
        complete = False
    field, order = problem.field, problem.order
    seen: dict[tuple, EchelonSubspace] = {}
    for assign in search.assignments:
        e = reduce_echelon(field, order, search.shape.vectors(field, assign))
        seen.setdefault(e.canonical_key(), e)
    solutions = sorted(seen.values(), key=lambda e: e.canonical_key())
    for e in solutions:
        if not is_elementary(e) or leading_terms(e) != problem.pivots:
            raise RuntimeError(
                "solver produced an invalid solution; this is a bug"
            )
    return SolutionSet(
        problem=problem,
        solutions=solutions,
        complete=complete,
        nodes=search.nodes,
        propagations=search.propagations,
    )


def classify_fiber(solutions: SolutionSet, family: FamilySpec) -> dict:
    """Set equality between a complete fiber and a predicted family."""
    if not solutions.complete:
        raise UsageError("cannot classify an incomplete solution set")
    problem = solutions.problem
    predicted = family.members(problem.field, problem.order)
    pred_keys = {e.canonical_key() for e in predicted}
    got_keys = solutions.canonical_keys()
    return {
        "match": pred_keys == got_keys,
        "predicted_size": len(pred_keys),
        "computed_size": len(got_keys),
        "missing": len(pred_keys - got_keys),
        "extra": len(got_keys - pred_keys),
    }


def predicted_family(lt_name: str, n: int) -> FamilySpec:
    """The family the classification predicts for a named leading-term set."""
    m = n // 2
    base = named_root_set(lt_name, n)
    if lt_name.startswith("rad:"):
        return FamilySpec(base=base, conj_root=None)
    if lt_name == "odd" or lt_name == "ev-high":
        return FamilySpec(base=base, conj_root=simple_root(m + 1))
    if lt_name == "ev-low":
        return FamilySpec(base=base, conj_root=simple_root(m))
    raise UsageError(f"no predicted family for {lt_name!r}")


# --- sampled experiments --------------------------------------------------------

def _submax_table(n: int) -> list[tuple[str, frozenset[Root]]]:
    from .commuting import predicted_max_sets

    return predicted_max_sets(n, "submax")


def sampled_lt_lemma_check(n: int, p: int, samples: int, seed: int) -> dict:
    """Conjugate the submaximal named sets by random unipotent automorphisms
    and confirm each image is maximal elementary with leading terms back in
    the predicted table.  Expected violation count: 0."""
    if (n % 2 == 1 and n < 5) or (n % 2 == 0 and n < 6):
        raise UsageError("sampled check needs odd n >= 5 or even n >= 6")
    from .actions import random_unipotent

    field = FieldSpec(p, n)
    order = classification_order(n)
    table = _submax_table(n)
    table_keys = {rs for _, rs in table}
    rng = np.random.default_rng(seed)
    violations = []
    for k in range(samples):
        tag, R = table[int(rng.integers(0, len(table)))]
        g = random_unipotent(field, seed=int(rng.integers(0, 2**62)))
        e = apply(g, lie_subspace(field, order, R))
        maximal = is_maximal_elementary(e)
        lt_ok = leading_terms(e) in table_keys
        if maximal is not True or not lt_ok:
            violations.append({"sample": k, "set": tag,
                               "maximal": maximal, "lt_in_table": lt_ok})
    return {
        "kind": "lt-lemma",
        "n": n,
        "p": p,
        "samples": samples,
        "seed": seed,
        "violations": len(violations),
        "detail": violations[:10],
    }


def dichotomy_check(n: int, p: int, samples: int, seed: int) -> dict:
    """Every sampled elementary subalgebra of dimension rk-1 must either be
    maximal with leading terms in the submaximal table, or extend inside its
    centralizer to an elementary subalgebra of dimension rk."""
    if n < 5:
        raise UsageError("dichotomy check needs n >= 5")
    from .actions import random_unipotent
    from .commuting import predicted_max_sets

    field = FieldSpec(p, n)
    order = classification_order(n)
    rk = p_rank(n)
    max_table = predicted_max_sets(n, "max")
    submax_table = _submax_table(n)
    submax_keys = {rs for _, rs in submax_table}
    rng = np.random.default_rng(seed)
    violations = []
    n_maximal = n_extended = 0
    for k in range(samples):
        g = random_unipotent(field, seed=int(rng.integers(0, 2**62)))
        if rng.integers(0, 2):
            _, R = submax_table[int(rng.integers(0, len(submax_table)))]
            e = apply(g, lie_subspace(field, order, R))
        else:
            _, full_set = max_table[int(rng.integers(0, len(max_table)))]
            full = apply(g, lie_subspace(field, order, full_set))
            lam = np.zeros(rk, dtype=np.int64)
            while not lam.any():
                lam = rng.integers(0, p, size=rk).astype(np.int64)
            from .linalg import nullspace

            combo = nullspace(lam.reshape(1, -1), p)
            e = reduce_echelon(field, order, (combo @ full.basis) % p)
        if e.dim != rk - 1:
            violations.append({"sample": k, "reason": "bad dimension"})
            continue
        maximal = is_maximal_elementary(e)
        if maximal is True:
            n_maximal += 1
            if leading_terms(e) not in submax_keys:
                violations.append({"sample": k, "reason": "maximal but LT "
                                   "outside the submaximal table"})
        else:
            witness = extension_witness(e)
            if witness is None:
                violations.append({"sample": k,
                                   "reason": "inconclusive maximality"})
                continue
            bigger = reduce_echelon(field, order,
                                    list(e.basis) + [witness])
            if bigger.dim != rk or not is_elementary(bigger):
                violations.append({"sample": k,
                                   "reason": "extension not elementary"})
            else:
                n_extended += 1
    return {
        "kind": "dichotomy",
        "n": n,
        "p": p,
        "samples": samples,
        "seed": seed,
        "violations": len(violations),
        "maximal_branch": n_maximal,
        "extended_branch": n_extended,
        "detail": violations[:10],
    }
