"""Wire formats: roots as "i-j" strings, root sets as sorted JSON arrays,
u-vectors and echelon subspaces as coefficient dictionaries.
"""

from __future__ import annotations

import json
from typing import Iterable

import numpy as np

from .errors import UsageError
from .nilradical import FieldSpec, vector_from_coeffs
from .ordering import TotalOrder, parse_order
from .roots import Root, check_root, positive_roots
from .subspaces import EchelonSubspace, reduce_echelon

SCHEMA = "submax-lie/1"


def root_str(root: Root) -> str:
    return f"{root[0]}-{root[1]}"


def parse_root(s: str) -> Root:
    try:
        i, j = s.split("-")
        return (int(i), int(j))
    except Exception as exc:
        raise UsageError(f"bad root {s!r}; expected 'i-j'") from exc


def rootset_json(R: Iterable[Root]) -> list[str]:
    return [root_str(r) for r in sorted(R)]


def parse_rootset(items: Iterable[str], n: int) -> frozenset[Root]:
    out = frozenset(parse_root(s) for s in items)
    for r in out:
        check_root(n, r)
    return out


def parse_lt_spec(spec, n: int) -> frozenset[Root]:
    """A named tag (rad:k / odd / ev-low / ev-high), a JSON array string, or
    a list of root strings."""
    from .commuting import named_root_set

    if isinstance(spec, str):
        if spec.startswith("["):
            try:
                items = json.loads(spec)
            except json.JSONDecodeError as exc:
                raise UsageError(f"bad root list {spec!r}") from exc
            return parse_rootset(items, n)
        return named_root_set(spec, n)
    return parse_rootset(spec, n)


def uvector_json(field: FieldSpec, v: np.ndarray) -> dict:
    coeffs = {
        root_str(root): int(v[k])
        for k, root in enumerate(positive_roots(field.n))
        if v[k] % field.p
    }
    return {"p": field.p, "n": field.n, "coeffs": coeffs}


def parse_uvector(obj: dict, allow_nonstandard: bool = False):
    field = FieldSpec(int(obj["p"]), int(obj["n"]),
                      allow_nonstandard=allow_nonstandard)
    coeffs = {parse_root(k): int(c) for k, c in obj.get("coeffs", {}).items()}
    return field, vector_from_coeffs(field, coeffs)


def subspace_json(e: EchelonSubspace) -> dict:
    return {
        "p": e.field.p,
        "n": e.field.n,
        "order": e.order.label(),
        "dim": e.dim,
        "pivots": rootset_json(e.pivot_set),
        "basis": [uvector_json(e.field, e.basis[k])["coeffs"]
                  for k in range(e.dim)],
    }


def parse_subspace(obj: dict, allow_nonstandard: bool = False) -> EchelonSubspace:
    field = FieldSpec(int(obj["p"]), int(obj["n"]),
                      allow_nonstandard=allow_nonstandard)
    order = parse_order(obj["order"], field.n)
    rows = [
        vector_from_coeffs(field, {parse_root(k): int(c)
                                   for k, c in coeffs.items()})
        for coeffs in obj["basis"]
    ]
    return reduce_echelon(field, order, rows)


def canonical_dumps(obj) -> str:
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2,
                      separators=(",", ": ")) + "\n"
