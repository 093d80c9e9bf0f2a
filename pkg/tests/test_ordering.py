import numpy as np
import pytest

from submaxlie.nilradical import FieldSpec, root_vector
from submaxlie.ordering import (
    check_stratification,
    classification_order,
    leading_root,
    parse_order,
    reverse_lex,
)
from submaxlie.roots import (
    parabolic_radical,
    positive_roots,
    root_sum,
    simple_root,
)


def test_reverse_lex_examples():
    order = reverse_lex((3, 1, 2, 4, 5), 5)
    # roots differing first at the most-precedent position: smaller wins
    assert order.greater(simple_root(1), simple_root(3))
    assert order.greater((4, 5), (1, 2))
    for r in positive_roots(5):
        assert not order.greater(r, r)


def test_reverse_lex_rejects_bad_precedence():
    with pytest.raises(ValueError):
        reverse_lex((1, 2, 2, 4, 5), 5)


@pytest.mark.parametrize("n,prec", [
    (5, (3, 1, 2, 4, 5)),
    (6, (4, 3, 1, 2, 5, 6)),
    (7, (4, 1, 2, 3, 5, 6, 7)),
])
def test_classification_order_precedence(n, prec):
    assert classification_order(n).precedence == prec


def test_classification_order_needs_n_at_least_2():
    with pytest.raises(ValueError):
        classification_order(1)


def test_rank_is_bijection():
    for n in (3, 5, 8):
        order = classification_order(n)
        ranks = sorted(order.ranks.values())
        assert ranks == list(range(order.num_roots))


def test_order_is_total_and_transitive():
    import random

    rng = random.Random(5)
    order = classification_order(6)
    roots = positive_roots(6)
    for _ in range(300):
        a, b, c = rng.choice(roots), rng.choice(roots), rng.choice(roots)
        if a != b:
            assert order.greater(a, b) != order.greater(b, a)
        if order.greater(a, b) and order.greater(b, c):
            assert order.greater(a, c)


def test_stratification_examples():
    order5 = classification_order(5)
    rad3 = parabolic_radical({3}, 5)
    rest = frozenset(positive_roots(5)) - rad3
    assert check_stratification(order5, [rest, rad3])

    order6 = classification_order(6)
    rad3 = parabolic_radical({3}, 6)
    rad4 = parabolic_radical({4}, 6)
    allr = frozenset(positive_roots(6))
    chain = [allr - rad3 - rad4, rad3 - rad4, rad4 - rad3, rad3 & rad4]
    assert check_stratification(order6, chain)
    assert not check_stratification(order6, list(reversed(chain)))


def test_stratification_rejects_overlap():
    order = classification_order(5)
    rad = parabolic_radical({3}, 5)
    with pytest.raises(ValueError):
        check_stratification(order, [rad, rad])


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7, 8])
def test_sum_sits_below_second_summand(n):
    # for positive a, b with a+b a root: a+b below b, in any induced order
    import random

    rng = random.Random(n)
    precs = [classification_order(n).precedence if n >= 2 else None]
    for _ in range(3):
        precs.append(tuple(rng.sample(range(1, n + 1), n)))
    for prec in precs:
        if prec is None:
            continue
        order = reverse_lex(prec, n)
        for a in positive_roots(n):
            for b in positive_roots(n):
                s = root_sum(a, b)
                if s is not None:
                    assert order.greater(b, s)


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_translation_monotonicity_exhaustive(n):
    order = classification_order(n)
    roots = positive_roots(n)
    for a in roots:
        for b in roots:
            if not order.greater(a, b):
                continue
            for g in roots:
                sa, sb = root_sum(a, g), root_sum(b, g)
                if sa is not None and sb is not None:
                    assert order.greater(sa, sb)


def test_leading_root_examples():
    field = FieldSpec(5, 5)
    order = classification_order(5)
    v = root_vector(field, (1, 3)) + root_vector(field, (3, 4))
    assert leading_root(order, v) == (1, 3)
    assert leading_root(order, root_vector(field, (2, 5))) == (2, 5)
    # equal at the most-precedent position, then the smaller coefficient wins
    v = root_vector(field, (3, 4)) + root_vector(field, (1, 6))
    assert leading_root(order, v) == (3, 4)
    with pytest.raises(ValueError):
        leading_root(order, np.zeros(15, dtype=np.int64))


def test_parse_order():
    assert parse_order("paper", 5).precedence == (3, 1, 2, 4, 5)
    assert parse_order("revlex:2,1,3", 3).precedence == (2, 1, 3)
    with pytest.raises(ValueError):
        parse_order("bogus", 5)
    with pytest.raises(ValueError):
        parse_order("revlex:1,1,3", 3)
