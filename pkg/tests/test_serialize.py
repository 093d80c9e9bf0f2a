import numpy as np
import pytest

from submaxlie.errors import UsageError
from submaxlie.nilradical import FieldSpec, vector_from_coeffs
from submaxlie.ordering import classification_order
from submaxlie.roots import crossing_roots, parabolic_radical
from submaxlie.serialize import (
    canonical_dumps,
    parse_lt_spec,
    parse_root,
    parse_rootset,
    parse_subspace,
    parse_uvector,
    root_str,
    rootset_json,
    subspace_json,
    uvector_json,
)
from submaxlie.subspaces import lie_subspace, reduce_echelon


def test_root_string_roundtrip():
    assert root_str((1, 4)) == "1-4"
    assert parse_root("1-4") == (1, 4)
    assert parse_root("2-10") == (2, 10)
    with pytest.raises(UsageError):
        parse_root("nope")


def test_rootset_json_sorted():
    R = parabolic_radical({2}, 3)
    assert rootset_json(R) == ["1-3", "1-4", "2-3", "2-4"]
    assert parse_rootset(rootset_json(R), 3) == R
    with pytest.raises(ValueError):
        parse_rootset(["7-9"], 3)


def test_parse_lt_spec_forms():
    assert parse_lt_spec("rad:2", 5) == parabolic_radical({2}, 5)
    assert parse_lt_spec("odd", 5) == crossing_roots({1, 2, 4}, 5)
    assert parse_lt_spec('["1-2","3-4"]', 5) == {(1, 2), (3, 4)}
    assert parse_lt_spec(["1-2", "3-4"], 5) == {(1, 2), (3, 4)}
    with pytest.raises(UsageError):
        parse_lt_spec("rad:x", 5)
    with pytest.raises(UsageError):
        parse_lt_spec("[broken", 5)


def test_uvector_json_roundtrip():
    field = FieldSpec(5, 5)
    v = vector_from_coeffs(field, {(1, 3): 1, (3, 4): 1})
    obj = uvector_json(field, v)
    assert obj == {"p": 5, "n": 5, "coeffs": {"1-3": 1, "3-4": 1}}
    field2, v2 = parse_uvector(obj)
    assert field2 == field
    assert np.array_equal(v, v2)


def test_subspace_json_roundtrip():
    field = FieldSpec(5, 5)
    order = classification_order(5)
    e = lie_subspace(field, order, crossing_roots({1, 2, 4}, 5))
    obj = subspace_json(e)
    assert obj["dim"] == 8
    assert obj["pivots"] == rootset_json(crossing_roots({1, 2, 4}, 5))
    back = parse_subspace(obj)
    assert back.canonical_key() == e.canonical_key()


def test_subspace_json_roundtrip_nontrivial_basis():
    field = FieldSpec(3, 4)
    order = classification_order(4)
    rng = np.random.default_rng(7)
    e = reduce_echelon(field, order,
                       rng.integers(0, 3, size=(4, 10)).astype(np.int64))
    back = parse_subspace(subspace_json(e))
    assert back.canonical_key() == e.canonical_key()


def test_canonical_dumps_deterministic():
    a = canonical_dumps({"b": 1, "a": [3, 2]})
    b = canonical_dumps({"a": [3, 2], "b": 1})
    assert a == b
    assert a.endswith("\n")
