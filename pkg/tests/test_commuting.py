import itertools

import pytest

from submaxlie.commuting import (
    enumerate_commuting,
    is_maximal_commuting,
    max_commuting_size,
    max_table,
    named_root_set,
    p_rank,
    size_equation_solutions,
)
from submaxlie.errors import BudgetExceeded, UsageError
from submaxlie.roots import (
    commutes,
    crossing_roots,
    parabolic_radical,
    positive_roots,
)


@pytest.mark.parametrize("n,expect", [
    (1, 1), (2, 2), (3, 4), (4, 6), (5, 9), (6, 12), (7, 16), (8, 20),
    (9, 25),
])
def test_p_rank_values(n, expect):
    assert p_rank(n) == expect


@pytest.mark.parametrize("n", range(1, 10))
def test_p_rank_is_max_crossing_size(n):
    best = 0
    for size in range(1, n + 1):
        for J in itertools.combinations(range(1, n + 2), size):
            best = max(best, len(crossing_roots(set(J), n)))
    assert best == p_rank(n)


def test_size_equation_examples():
    assert size_equation_solutions(5, 8) == {2, 4}
    assert size_equation_solutions(6, 11) == set()
    assert size_equation_solutions(5, 9) == {3}


def brute_commuting(n, r, maximal_only):
    roots = positive_roots(n)
    out = []
    for combo in itertools.combinations(roots, r):
        if all(commutes(a, b) for a, b in itertools.combinations(combo, 2)):
            s = frozenset(combo)
            if maximal_only and not is_maximal_commuting(s, n):
                continue
            out.append(s)
    return set(out)


def test_enumerate_a2_pairs():
    got = enumerate_commuting(2, 2)
    assert set(got) == {
        frozenset({(1, 2), (1, 3)}),
        frozenset({(2, 3), (1, 3)}),
    }


@pytest.mark.parametrize("n,r,maximal", [
    (3, 3, False), (3, 4, True), (4, 5, False), (4, 6, True), (5, 8, True),
])
def test_enumerate_matches_naive(n, r, maximal):
    got = enumerate_commuting(n, r, maximal_only=maximal)
    assert set(got) == brute_commuting(n, r, maximal)
    assert len(set(got)) == len(got)


def test_a5_submax_table_by_brute_force():
    got = set(enumerate_commuting(5, 8, maximal_only=True))
    assert got == {
        parabolic_radical({2}, 5),
        parabolic_radical({4}, 5),
        crossing_roots({1, 2, 4}, 5),
    }


def test_a4_max_table_by_brute_force():
    got = set(enumerate_commuting(4, 6, maximal_only=True))
    assert got == {parabolic_radical({2}, 4), parabolic_radical({3}, 4)}


def test_enumerate_results_admit_no_extension():
    for rs in enumerate_commuting(5, 8, maximal_only=True):
        assert is_maximal_commuting(rs, 5)


def test_enumerate_budget_refusal():
    with pytest.raises(BudgetExceeded):
        enumerate_commuting(7, 14, budget=50)


def test_enumerate_deterministic_order():
    a = enumerate_commuting(4, 4)
    b = enumerate_commuting(4, 4)
    assert a == b


def test_named_set_examples():
    assert named_root_set("odd", 5) == crossing_roots({1, 2, 4}, 5)
    assert len(named_root_set("ev-low", 6)) == 11
    assert named_root_set("rad:3", 5) == parabolic_radical({3}, 5)
    assert len(named_root_set("rad:3", 5)) == 9


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_named_odd_size(n):
    assert len(named_root_set("odd", n)) == p_rank(n) - 1


@pytest.mark.parametrize("n", [4, 6, 8])
def test_named_even_sizes(n):
    assert len(named_root_set("ev-low", n)) == p_rank(n) - 1
    assert len(named_root_set("ev-high", n)) == p_rank(n) - 1


def test_named_set_parity_mismatch():
    with pytest.raises(UsageError):
        named_root_set("odd", 6)
    with pytest.raises(UsageError):
        named_root_set("ev-low", 5)
    with pytest.raises(UsageError):
        named_root_set("rad:9", 5)


@pytest.mark.parametrize("n", range(2, 10))
def test_max_clique_matches_formula(n):
    assert max_commuting_size(n) == p_rank(n)


@pytest.mark.parametrize("n,level,names", [
    (5, "submax", {"rad:2", "rad:4", "odd"}),
    (6, "submax", {"ev-high", "ev-low"}),
    (5, "max", {"rad:3"}),
    (4, "max", {"rad:2", "rad:3"}),
])
def test_max_table_contents(n, level, names):
    report = max_table(n, level)
    assert {entry["name"] for entry in report["predicted"]} == names
    assert report["match"] is True


def test_max_table_predict_only():
    report = max_table(7, "submax", compute=False)
    assert report["computed"] is None and report["match"] is None
    assert report["budget_exceeded"] is False


def test_max_table_survives_budget_refusal():
    report = max_table(7, "submax", budget=10)
    assert report["computed"] is None and report["match"] is None
    assert report["budget_exceeded"] is True
    assert {e["name"] for e in report["predicted"]} == {"rad:3", "rad:5",
                                                        "odd"}
