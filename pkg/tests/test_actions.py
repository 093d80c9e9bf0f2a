import numpy as np
import pytest

from submaxlie.actions import (
    apply,
    apply_to_vector,
    exp_ad,
    identity_aut,
    on_u_matrix,
    random_unipotent,
    torus,
    weyl,
    weyl_conjugacy_search,
)
from submaxlie.errors import UsageError
from submaxlie.nilradical import FieldSpec, bracket, root_vector
from submaxlie.ordering import classification_order
from submaxlie.roots import (
    crossing_roots,
    highest_root,
    parabolic_radical,
    simple_reflection,
    simple_root,
    weyl_image_exact,
)
from submaxlie.subspaces import leading_terms, lie_subspace, reduce_echelon

FIELD5 = FieldSpec(5, 5)
ORDER5 = classification_order(5)


def test_exp_ad_examples():
    g = exp_ad(FIELD5, 2, simple_root(3))
    x = root_vector(FIELD5, (4, 5))
    got = apply_to_vector(g, x)
    want = (x + 2 * root_vector(FIELD5, (3, 5))) % 5
    assert np.array_equal(got, want)
    assert np.array_equal(
        apply_to_vector(exp_ad(FIELD5, 0, simple_root(2)), x), x
    )
    comp = exp_ad(FIELD5, 3, simple_root(3)).compose(
        exp_ad(FIELD5, -3, simple_root(3)))
    assert np.array_equal(comp.g, identity_aut(FIELD5).g)


def test_exp_ad_matches_linear_ad_term():
    rng = np.random.default_rng(2)
    for root in [(1, 3), (2, 5), (3, 4)]:
        a = int(rng.integers(1, 5))
        g = exp_ad(FIELD5, a, root)
        for _ in range(10):
            x = rng.integers(0, 5, size=15).astype(np.int64)
            want = (x + a * bracket(FIELD5, root_vector(FIELD5, root), x)) % 5
            assert np.array_equal(apply_to_vector(g, x), want)


def test_automorphism_preserves_bracket():
    rng = np.random.default_rng(8)
    for seed in range(10):
        g = random_unipotent(FIELD5, seed=seed, with_torus=True)
        x = rng.integers(0, 5, size=15).astype(np.int64)
        y = rng.integers(0, 5, size=15).astype(np.int64)
        lhs = apply_to_vector(g, bracket(FIELD5, x, y))
        rhs = bracket(FIELD5, apply_to_vector(g, x), apply_to_vector(g, y))
        assert np.array_equal(lhs, rhs)
        M = on_u_matrix(g)
        from submaxlie.linalg import inv

        inv(M, 5)  # invertible


def test_apply_examples():
    odd = crossing_roots({1, 2, 4}, 5)
    e = lie_subspace(FIELD5, ORDER5, odd)
    for a in range(5):
        img = apply(exp_ad(FIELD5, a, simple_root(3)), e)
        assert leading_terms(img) == odd
    target = parabolic_radical({3}, 5) - {simple_root(3)}
    img = apply(weyl(FIELD5, simple_reflection(3, 5)), e)
    assert img.canonical_key() == lie_subspace(
        FIELD5, ORDER5, target).canonical_key()
    assert apply(identity_aut(FIELD5), e).canonical_key() == e.canonical_key()


def test_weyl_apply_errors_when_leaving_u():
    e = lie_subspace(FIELD5, ORDER5, {simple_root(1)})
    with pytest.raises(UsageError):
        apply(weyl(FIELD5, simple_reflection(1, 5)), e)


def test_torus_fixes_leading_terms_and_root_spans():
    t = torus(FIELD5, [1, 2, 3, 4, 2, 1])
    R = parabolic_radical({2}, 5)
    e = lie_subspace(FIELD5, ORDER5, R)
    assert apply(t, e).canonical_key() == e.canonical_key()
    rng = np.random.default_rng(12)
    for _ in range(10):
        rows = rng.integers(0, 5, size=(4, 15)).astype(np.int64)
        e = reduce_echelon(FIELD5, ORDER5, rows)
        assert leading_terms(apply(t, e)) == leading_terms(e)


def test_random_unipotent_determinism():
    a = random_unipotent(FIELD5, seed=99)
    b = random_unipotent(FIELD5, seed=99)
    assert np.array_equal(a.g, b.g)
    assert a.trace == b.trace
    c = random_unipotent(FIELD5, seed=100)
    assert not np.array_equal(a.g, c.g)


def test_unipotent_fixes_leading_terms():
    rng = np.random.default_rng(21)
    for k in range(100):
        g = random_unipotent(FIELD5, seed=k)
        d = int(rng.integers(1, 16))
        e = reduce_echelon(
            FIELD5, ORDER5,
            rng.integers(0, 5, size=(d, 15)).astype(np.int64))
        assert leading_terms(apply(g, e)) == leading_terms(e)


def test_conjugacy_search_finds_reflection_witness():
    odd = crossing_roots({1, 2, 4}, 5)
    target = parabolic_radical({3}, 5) - {simple_root(3)}
    w = weyl_conjugacy_search(5, odd, target)
    assert w is not None
    assert weyl_image_exact(w, odd) == target
    # the named simple reflection is itself a witness
    assert weyl_image_exact(simple_reflection(3, 5), odd) == target


def test_conjugacy_search_none_cases():
    assert weyl_conjugacy_search(
        5, parabolic_radical({2}, 5), parabolic_radical({4}, 5)) is None
    assert weyl_conjugacy_search(
        5, parabolic_radical({2}, 5), parabolic_radical({4}, 5),
        exhaustive=True) is None
    gamma = highest_root(6)
    a = parabolic_radical({3}, 6) - {gamma}
    b = parabolic_radical({4}, 6) - {gamma}
    assert weyl_conjugacy_search(6, a, b) is None
    assert weyl_conjugacy_search(6, a, b, exhaustive=True) is None


def test_maximality_verdict_invariant_under_unipotent():
    from submaxlie.subspaces import is_maximal_elementary

    rad3 = parabolic_radical({3}, 5)
    cases = [
        (lie_subspace(FIELD5, ORDER5, parabolic_radical({2}, 5)), True),
        (lie_subspace(FIELD5, ORDER5, rad3 - {simple_root(3)}), False),
    ]
    for e, verdict in cases:
        assert is_maximal_elementary(e) is verdict
        for seed in range(10):
            g = random_unipotent(FIELD5, seed=seed)
            assert is_maximal_elementary(apply(g, e)) is verdict


def test_conjugacy_search_symmetry_and_verification():
    import random

    rng = random.Random(3)
    from submaxlie.roots import positive_roots, weyl_apply

    roots = positive_roots(5)
    for _ in range(30):
        R1 = frozenset(rng.sample(roots, rng.randint(1, 8)))
        w0 = tuple(rng.sample(range(1, 7), 6))
        img = weyl_image_exact(w0, R1)
        R2 = img if img is not None else weyl_apply(w0, R1)
        fwd = weyl_conjugacy_search(5, R1, R2)
        bwd = weyl_conjugacy_search(5, R2, R1)
        assert (fwd is None) == (bwd is None)
        if fwd is not None:
            assert weyl_image_exact(fwd, R1) == R2
        if img is not None:
            assert fwd is not None
