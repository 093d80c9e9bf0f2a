import numpy as np
import pytest

from submaxlie.nilradical import (
    FieldSpec,
    ad_matrix,
    bracket,
    from_matrix,
    is_p_nilpotent,
    lie_span,
    root_vector,
    smallest_standard_prime,
    to_matrix,
    vector_from_coeffs,
    zero_vector,
)
from submaxlie.roots import crossing_roots, parabolic_radical, positive_roots


def test_field_spec_guards():
    FieldSpec(5, 5)
    with pytest.raises(ValueError):
        FieldSpec(2, 5)  # 2 divides 6
    FieldSpec(2, 5, allow_nonstandard=True)
    with pytest.raises(ValueError):
        FieldSpec(6, 4)  # not prime
    with pytest.raises(ValueError):
        FieldSpec(5, 0)


@pytest.mark.parametrize("n,p", [(5, 5), (6, 2), (7, 3), (1, 3), (9, 3)])
def test_smallest_standard_prime(n, p):
    assert smallest_standard_prime(n) == p


def test_bracket_examples():
    field = FieldSpec(5, 5)
    x12, x23 = root_vector(field, (1, 2)), root_vector(field, (2, 3))
    assert np.array_equal(bracket(field, x12, x23), root_vector(field, (1, 3)))
    x13, x24 = root_vector(field, (1, 3)), root_vector(field, (2, 4))
    assert not bracket(field, x13, x24).any()
    rng = np.random.default_rng(0)
    x = rng.integers(0, 5, size=field.num_roots).astype(np.int64)
    assert not bracket(field, x, x).any()


@pytest.mark.parametrize("n", [2, 3, 5, 8])
@pytest.mark.parametrize("p", [2, 5, 7])
def test_bracket_jacobi_and_bilinear(n, p):
    if (n + 1) % p == 0:
        field = FieldSpec(p, n, allow_nonstandard=True)
    else:
        field = FieldSpec(p, n)
    rng = np.random.default_rng(n * 100 + p)
    N = field.num_roots
    for _ in range(250):
        x, y, z = (rng.integers(0, p, size=N).astype(np.int64)
                   for _ in range(3))
        jac = (bracket(field, x, bracket(field, y, z))
               + bracket(field, y, bracket(field, z, x))
               + bracket(field, z, bracket(field, x, y))) % p
        assert not jac.any()
        a, b = int(rng.integers(0, p)), int(rng.integers(0, p))
        lin = bracket(field, (a * x + b * y) % p, z)
        assert np.array_equal(
            lin, (a * bracket(field, x, z) + b * bracket(field, y, z)) % p
        )


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_bracket_agrees_with_matrix_commutator(n):
    field = FieldSpec(smallest_standard_prime(n), n)
    p = field.p
    for a in positive_roots(n):
        for b in positive_roots(n):
            xa, xb = root_vector(field, a), root_vector(field, b)
            lhs = to_matrix(field, bracket(field, xa, xb))
            A, B = to_matrix(field, xa), to_matrix(field, xb)
            assert np.array_equal(lhs, (A @ B - B @ A) % p)


def test_to_from_matrix_roundtrip():
    field = FieldSpec(3, 4)
    rng = np.random.default_rng(3)
    v = rng.integers(0, 3, size=field.num_roots).astype(np.int64)
    assert np.array_equal(from_matrix(field, to_matrix(field, v)), v)
    bad = np.ones((5, 5), dtype=np.int64)
    with pytest.raises(ValueError):
        from_matrix(field, bad)


def test_is_p_nilpotent_examples():
    field = FieldSpec(5, 5)
    v = root_vector(field, (1, 3)) + root_vector(field, (3, 4))
    assert is_p_nilpotent(field, v)
    chain = vector_from_coeffs(field, {(k, k + 1): 1 for k in range(1, 6)})
    assert not is_p_nilpotent(field, chain)
    assert is_p_nilpotent(field, zero_vector(field))


def test_freshmans_dream_on_commuting_pairs():
    field = FieldSpec(5, 5)
    rng = np.random.default_rng(9)
    R = crossing_roots({1, 2, 4}, 5)
    basis = lie_span(field, R)
    for _ in range(100):
        x = (rng.integers(0, 5, size=basis.shape[0]) @ basis) % 5
        y = (rng.integers(0, 5, size=basis.shape[0]) @ basis) % 5
        assert not bracket(field, x, y).any()
        assert is_p_nilpotent(field, x) and is_p_nilpotent(field, y)
        assert is_p_nilpotent(field, (x + y) % 5)


def test_lie_span_examples():
    field = FieldSpec(5, 5)
    basis = lie_span(field, parabolic_radical({3}, 5))
    assert basis.shape == (9, 15)
    assert lie_span(field, frozenset()).shape == (0, 15)
    odd = lie_span(field, crossing_roots({1, 2, 4}, 5))
    assert odd.shape == (8, 15)
    for k in range(8):
        for l in range(k + 1, 8):
            assert not bracket(field, odd[k], odd[l]).any()


def test_ad_matrix_matches_bracket():
    field = FieldSpec(3, 4)
    rng = np.random.default_rng(4)
    v = rng.integers(0, 3, size=field.num_roots).astype(np.int64)
    x = rng.integers(0, 3, size=field.num_roots).astype(np.int64)
    M = ad_matrix(field, v)
    assert np.array_equal((M @ x) % 3, bracket(field, x, v))
