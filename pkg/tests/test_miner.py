import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from taxohide.datasets import make_random_instance
from taxohide.miner import CLHUIMiner, gwu, mine_clhuis, utility_lists

import oracles


def test_gwu_values(example, ids):
    assert gwu(ids("X"), example) == 98
    assert gwu(ids("e", "d"), example) == 21 + 31 + 18 + 21
    assert gwu(ids("c"), example) == 31 + 13


def test_utility_lists_match_node_utilities(example):
    lists = utility_lists(example)
    x = example.taxonomy.ids["X"]
    assert lists[x] == {1: 6, 2: 10, 3: 22, 5: 6, 7: 13, 8: 9}


def test_example_matches_oracle(example):
    assert mine_clhuis(example, 50).itemsets == oracles.mine(example, 50)


def test_example_includes_reference_itemsets(example, table2):
    found = mine_clhuis(example, 50).itemsets
    for p, u in table2.items():
        assert found[p] == u


def test_example_extra_itemset(example, ids):
    # {X, d, e} clears the threshold through T2 and T3
    found = mine_clhuis(example, 50).itemsets
    assert found[ids("X", "d", "e")] == 52
    assert len(found) == 9


def test_threshold_above_everything(example):
    assert mine_clhuis(example, 10**6).itemsets == {}


def test_minutil_zero_lists_only_supported_itemsets(example):
    found = mine_clhuis(example, 0).itemsets
    assert found == oracles.mine(example, 0)
    assert all(u > 0 for u in found.values())


def test_negative_minutil_rejected(example):
    with pytest.raises(ValueError):
        mine_clhuis(example, -1)


def test_result_counters(example):
    res = mine_clhuis(example, 50)
    assert res.n_candidates > 0 and 0 <= res.n_pruned <= res.n_candidates
    assert res.sorted_itemsets() == sorted(res.itemsets)


@pytest.mark.parametrize("seed", range(100))
def test_matches_brute_force(seed):
    db = make_random_instance(seed)
    total = db.total_utility
    for frac in (0.05, 0.2, 0.5):
        minutil = max(1, int(total * frac))
        assert mine_clhuis(db, minutil).itemsets == oracles.mine(db, minutil)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_gwu_bounds_utility(seed):
    db = make_random_instance(seed, max_leaves=6, max_generalized=3)
    for p, u in mine_clhuis(db, 1).itemsets.items():
        assert gwu(p, db) >= u


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(1, 60), st.integers(1, 60))
def test_threshold_monotone(seed, a, b):
    db = make_random_instance(seed, max_leaves=6, max_generalized=3)
    lo, hi = sorted((a, b))
    low = mine_clhuis(db, lo).itemsets
    high = mine_clhuis(db, hi).itemsets
    assert high == {p: u for p, u in low.items() if u >= hi}


def test_estimator(example):
    miner = CLHUIMiner(minutil=50)
    assert miner.get_params() == {"minutil": 50}
    found = miner.fit_discover(example, names=True)
    assert found[("X", "d")] == 62
    assert miner.discover() == mine_clhuis(example, 50).itemsets


def test_docstring_examples():
    import doctest

    import taxohide.miner

    assert doctest.testmod(taxohide.miner).failed == 0
