"""Scripted elimination replay for LT fibers of the classification shapes.

Each script is a sequence of steps over the echelon unknowns:

* a force step names one coordinate of one pairwise bracket and the unknown
  it is expected to pin down; the engine evaluates that coordinate under the
  current conclusions and only accepts the step if the polynomial is exactly
  (nonzero constant) * (that single unknown), concluding the unknown is 0;
* a normalize step designates the surviving one-parameter coefficient and
  the root used to conjugate it away; the engine verifies symbolically that
  conjugating any point of the current solution locus by 1 + t.ad(x_root)
  stays inside the echelon pattern, preserves every previously forced zero,
  and shifts the designated coefficient by a nonzero constant times t; the
  coefficient may then be normalized to zero.

A completed script pins every unknown, yielding a unique normalized
solution; the fiber is that point's orbit under the recorded one-parameter
conjugations (or the point itself when no normalization occurred).  The
returned members are re-verified independently.
"""

from __future__ import annotations

from typing import Optional

from .actions import apply, exp_ad
from .commuting import named_root_set
from .errors import UsageError
from .roots import Root, root_index, root_sum, simple_root, structure_constant
from .subspaces import is_elementary, leading_terms, reduce_echelon


def _poly_substitute_all(poly, assign, p):
    from .solver import _substitute

    out = dict(poly)
    for var in {v for mono in poly for v in mono}:
        if var in assign:
            out = _substitute(out, var, assign[var], p)
    return out


class _Replay:
    def __init__(self, problem):
        from .solver import _Shape

        self.problem = problem
        self.shape = _Shape(problem)
        self.p = problem.field.p
        self.assign: dict[int, int] = {}
        self.log: list[dict] = []
        self.conj_root: Optional[Root] = None

    # -- step primitives --------------------------------------------------

    def force_zero(
        self, pivot_a: Root, pivot_b: Root, coord: Root,
        target_pivot: Root, target_root: Root,
    ) -> None:
        shape, p = self.shape, self.p
        vid = shape.var_id(target_pivot, target_root)
        k, l = shape.row_of[pivot_a], shape.row_of[pivot_b]
        if k > l:
            k, l = l, k
        poly = _poly_substitute_all(
            shape.bracket_coordinate(k, l, coord, p), self.assign, p
        )
        if vid in self.assign:
            if poly:
                raise UsageError(
                    "replay step inconsistent after earlier conclusions"
                )
            return
        vs = {v for mono in poly for v in mono}
        linear = poly.get((vid,), 0)
        if vs != {vid} or poly.get((), 0) or not linear or len(poly) != 1:
            raise UsageError(
                f"replay step failed: coordinate {coord} of bracket "
                f"({pivot_a}, {pivot_b}) is not a clean multiple of the "
                "target unknown"
            )
        self.assign[vid] = 0
        self.log.append({
            "step": "force_zero",
            "row": _rs(target_pivot),
            "coefficient_at": _rs(target_root),
            "via_bracket": [_rs(pivot_a), _rs(pivot_b)],
            "coordinate": _rs(coord),
        })

    def normalize(self, target_pivot: Root, target_root: Root,
                  gamma: Root) -> None:
        shape, p = self.shape, self.p
        u_star = shape.var_id(target_pivot, target_root)
        if u_star in self.assign:
            raise UsageError("normalization target already pinned")
        pivot_rows = {piv: k for k, piv in enumerate(shape.pivots)}
        slope = None
        for k, row in enumerate(shape.slots):
            base = {}
            for (root, vid) in row:
                if vid is None:
                    base[root] = {(): 1}
                elif vid in self.assign:
                    base[root] = {(): self.assign[vid]} if self.assign[vid] else {}
                else:
                    base[root] = {(vid,): 1}
            # coefficient shift at gamma+delta is N(gamma, delta) * coeff(delta)
            pert: dict[Root, dict] = {}
            for (root, _) in row:
                s = root_sum(gamma, root)
                if s is None:
                    continue
                c = structure_constant(gamma, root)
                tgt = pert.setdefault(s, {})
                for mono, cc in base[root].items():
                    tgt[mono] = (tgt.get(mono, 0) + c * cc) % p
            for rho, poly in pert.items():
                poly = {m: c for m, c in poly.items() if c}
                if not poly:
                    continue
                if rho in pivot_rows:
                    raise UsageError(
                        "conjugation perturbs a pivot coordinate; "
                        "normalization not valid in this shape"
                    )
                vid = shape.varmap.get((k, rho))
                if vid is None:
                    raise UsageError(
                        "conjugation leaves the echelon pattern"
                    )
                if vid in self.assign:
                    raise UsageError(
                        "conjugation disturbs an already-forced coefficient"
                    )
                if vid == u_star:
                    if set(poly) != {()}:
                        raise UsageError(
                            "normalization shift is not constant"
                        )
                    slope = poly[()]
        if not slope:
            raise UsageError(
                "conjugation does not move the designated coefficient"
            )
        self.assign[u_star] = 0
        self.conj_root = gamma
        self.log.append({
            "step": "normalize",
            "row": _rs(target_pivot),
            "coefficient_at": _rs(target_root),
            "conjugation_root": _rs(gamma),
            "shift_slope": slope,
        })

    def finish(self):
        from .solver import SolutionSet

        shape, problem = self.shape, self.problem
        unassigned = [v for v in range(shape.num_vars) if v not in self.assign]
        if unassigned:
            slots = [shape.var_slot[v] for v in unassigned]
            raise UsageError(
                f"replay script stalled with {len(unassigned)} coefficients "
                f"undetermined: {slots[:4]}..."
            )
        field, order = problem.field, problem.order
        for poly in shape.bracket_constraints(self.p):
            residue = _poly_substitute_all(poly, self.assign, self.p)
            if residue:
                raise UsageError("normalized point violates a bracket")
        base = reduce_echelon(
            field, order, shape.vectors(field, self.assign)
        )
        if self.conj_root is None:
            members = [base]
        else:
            members = [
                apply(exp_ad(field, a, self.conj_root), base)
                for a in range(field.p)
            ]
        keys = set()
        for e in members:
            if not is_elementary(e) or leading_terms(e) != problem.pivots:
                raise UsageError("replayed family member fails verification")
            keys.add(e.canonical_key())
        if len(keys) != len(members):
            raise UsageError("replayed family members are not distinct")
        members.sort(key=lambda e: e.canonical_key())
        self.log.append({
            "step": "family",
            "size": len(members),
            "one_parameter": self.conj_root is not None,
        })
        return SolutionSet(
            problem=problem,
            solutions=members,
            complete=True,
            nodes=0,
            propagations=sum(
                1 for entry in self.log if entry["step"] == "force_zero"
            ),
            replay_log=self.log,
        )


def _rs(root: Root) -> str:
    return f"{root[0]}-{root[1]}"


# -- the five scripted shapes ---------------------------------------------

def _script_odd_rad_low(r: _Replay, m: int) -> None:
    """Pivots {(i,j) : i <= m < j} for n = 2m+1: everything dies by brackets."""
    top = 2 * m + 2
    for i in range(1, m + 1):
        for s in range(1, i):
            for t in range(s + 1, m + 1):
                r.force_zero((i, m + 1), (t, m + 2), (s, m + 2),
                             (i, m + 1), (s, t))
    for i in range(1, m + 1):
        j = 1 if i != 1 else 2
        for rr in range(m + 2, top + 1):
            r.force_zero((i, m + 1), (j, m + 1), (j, rr),
                         (i, m + 1), (m + 1, rr))


def _script_odd_rad_high(r: _Replay, m: int) -> None:
    """Pivots {(i,j) : i <= m+2 < j} for n = 2m+1."""
    top = 2 * m + 2
    zs = list(range(m + 3, top + 1))
    for j in zs:
        jp = zs[0] if j != zs[0] else zs[1]
        for s in range(1, m + 2):
            for t in range(s + 1, m + 2):
                r.force_zero((m + 2, j), (t, jp), (s, jp),
                             (m + 2, j), (s, t))
    for i in range(1, m + 2):
        for j in zs:
            jo = zs[0] if j != zs[0] else zs[1]
            for s in range(1, i):
                r.force_zero((m + 2, jo), (i, j), (s, jo),
                             (i, j), (s, m + 2))
    for j in zs:
        i = zs[0] if j != zs[0] else zs[1]
        for s in range(1, m + 2):
            r.force_zero((m + 2, i), (m + 2, j), (s, i),
                         (m + 2, j), (s, m + 2))


def _script_odd_crossing(r: _Replay, m: int) -> None:
    """Pivots from the index cut {1..m, m+2}, odd n = 2m+1."""
    top = 2 * m + 2
    ys = list(range(1, m + 1))
    zs = list(range(m + 3, top + 1))
    for i in ys:
        for s in range(1, i):
            for t in range(s + 1, m + 1):
                r.force_zero((i, m + 1), (t, zs[0]), (s, zs[0]),
                             (i, m + 1), (s, t))
    for j in zs:
        jp = zs[0] if j != zs[0] else zs[1]
        for s in range(1, m):
            for t in range(s + 1, m + 1):
                r.force_zero((m + 2, j), (t, jp), (s, jp),
                             (m + 2, j), (s, t))
    for i in ys:
        ip = 1 if i != 1 else 2
        for rr in range(m + 2, top + 1):
            r.force_zero((i, m + 1), (ip, m + 1), (ip, rr),
                         (i, m + 1), (m + 1, rr))
    for j in zs:
        jp = zs[0] if j != zs[0] else zs[1]
        for rr in range(1, m + 1):
            r.force_zero((m + 2, j), (m + 2, jp), (rr, jp),
                         (m + 2, j), (rr, m + 2))
    r.normalize((1, m + 1), (1, m + 2), simple_root(m + 1))
    for j in zs:
        for rr in range(m + 2, top + 1):
            r.force_zero((1, m + 1), (m + 2, j), (1, rr),
                         (m + 2, j), (m + 1, rr))
    for i in ys:
        for rr in range(1, m + 1):
            if (i, rr) == (1, 1):
                continue
            r.force_zero((i, m + 1), (m + 2, zs[0]), (rr, zs[0]),
                         (i, m + 1), (rr, m + 2))
    for i in ys:
        for j in zs:
            for s in range(1, i):
                r.force_zero((i, j), (m + 2, j), (s, j),
                             (i, j), (s, m + 2))


def _script_even_crossing_low(r: _Replay, m: int) -> None:
    """Pivots from the index cut {1..m-1, m+1}, even n = 2m."""
    top = 2 * m + 1
    r.normalize((m + 1, m + 2), (m, m + 2), simple_root(m))
    for i in range(1, m):
        for s in range(1, m + 1):
            r.force_zero((m + 1, m + 2), (i, m), (s, m + 2),
                         (i, m), (s, m + 1))
    for s in range(m + 3, top + 1):
        r.force_zero((m + 1, m + 2), (1, m), (1, s),
                     (m + 1, m + 2), (m, s))
    for j in range(m + 3, top + 1):
        for s in range(m + 2, top + 1):
            r.force_zero((m + 1, j), (1, m), (1, s),
                         (m + 1, j), (m, s))
    for i in range(1, m):
        for u in range(1, i):
            for v in range(u + 1, m):
                r.force_zero((v, m + 2), (i, m), (u, m + 2),
                             (i, m), (u, v))
    for i in range(1, m):
        ip = 1 if i != 1 else 2
        for s in range(m + 2, top + 1):
            r.force_zero((ip, m), (i, m), (ip, s),
                         (i, m), (m, s))


def _script_even_crossing_high(r: _Replay, m: int) -> None:
    """Pivots from the index cut {1..m, m+2}, even n = 2m."""
    top = 2 * m + 1
    zs = list(range(m + 3, top + 1))
    for j in zs:
        jp = zs[0] if j != zs[0] else zs[1]
        for u in range(1, m + 1):
            for v in range(u + 1, m + 1):
                r.force_zero((v, jp), (m + 2, j), (u, jp),
                             (m + 2, j), (u, v))
    for i in range(1, m + 1):
        for j in zs:
            for t in range(1, i):
                r.force_zero((i, j), (m + 2, j), (t, j),
                             (i, j), (t, m + 2))
    for i in range(1, m + 1):
        ip = 1 if i != 1 else 2
        for s in range(m + 2, top + 1):
            r.force_zero((ip, m + 1), (i, m + 1), (ip, s),
                         (i, m + 1), (m + 1, s))
    r.normalize((1, m + 1), (1, m + 2), simple_root(m + 1))
    for j in zs:
        for s in range(m + 2, top + 1):
            r.force_zero((1, m + 1), (m + 2, j), (1, s),
                         (m + 2, j), (m + 1, s))
    for s in range(2, m + 1):
        r.force_zero((1, m + 1), (m + 2, zs[0]), (s, zs[0]),
                     (1, m + 1), (s, m + 2))
    for i in range(2, m + 1):
        for s in range(1, m + 1):
            r.force_zero((i, m + 1), (m + 2, zs[0]), (s, zs[0]),
                         (i, m + 1), (s, m + 2))
    for j in zs:
        jp = zs[0] if j != zs[0] else zs[1]
        for s in range(1, m + 1):
            r.force_zero((m + 2, jp), (m + 2, j), (s, jp),
                         (m + 2, j), (s, m + 2))


def replay_fiber(problem):
    """Run the scripted elimination for a classification pivot set."""
    n = problem.field.n
    m = n // 2
    r = _Replay(problem)
    if r.shape.num_vars == 0:
        return r.finish()
    pivots = problem.pivots
    if n % 2 == 1 and m >= 2:
        if pivots == named_root_set(f"rad:{m}", n):
            _script_odd_rad_low(r, m)
            return r.finish()
        if pivots == named_root_set(f"rad:{m + 2}", n):
            _script_odd_rad_high(r, m)
            return r.finish()
        if pivots == named_root_set("odd", n):
            _script_odd_crossing(r, m)
            return r.finish()
    if n % 2 == 0 and m >= 3:
        if pivots == named_root_set("ev-low", n):
            _script_even_crossing_low(r, m)
            return r.finish()
        if pivots == named_root_set("ev-high", n):
            _script_even_crossing_high(r, m)
            return r.finish()
    raise UsageError(
        "replay scripts cover only the classification pivot shapes"
    )
