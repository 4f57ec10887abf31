from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from taxohide.database import gen_item_utility, itemset_utility
from taxohide.datasets import make_random_instance
from taxohide.gidic import build_gidic, sensitive_transactions, st_ordering
from taxohide.miner import mine_clhuis

import oracles

ITEM_ROWS = {
    "a": (2, 4, 30), "b": (2, 3, 8), "c": (1, 3, 15), "d": (3, 3, 45), "e": (2, 4, 24),
    "f": (0, 0, 2), "X": (2, 4, 53), "Y": (2, 4, 38), "Z": (3, 4, 69),
}
TX_ROWS = {
    1: (2, 4, Fraction(2, 5)), 2: (3, 5, Fraction(1, 2)), 3: (3, 5, Fraction(1, 2)),
    4: (1, 1, Fraction(1, 2)), 5: (2, 4, Fraction(2, 5)), 6: (1, 1, Fraction(1, 2)),
    8: (1, 5, Fraction(1, 6)),
}


@pytest.fixture
def dic(example, table2, example_sensitive):
    non_sensitive = [p for p in table2 if p not in example_sensitive]
    return build_gidic(example, example_sensitive, non_sensitive)


def test_item_rows(dic, example):
    tax = example.taxonomy
    got = {tax.names[i]: (e.sc, e.nsc, e.rgisu) for i, e in dic.entries.items()}
    assert got == ITEM_ROWS


def test_transaction_rows(dic):
    got = {tid: (w.sc, w.nsc, w.wt) for tid, w in dic.transactions.items()}
    assert got == TX_ROWS


def test_st_order(dic):
    assert dic.st_order == [2, 3, 4, 6, 1, 5, 8]


def test_st_tids_hold_only_sensitive_transactions(dic, example):
    c = example.taxonomy.ids["c"]
    # T7 also holds c but contains no sensitive itemset
    assert dic[c].st_tids == [3]
    assert all(set(e.st_tids) <= set(dic.transactions) for e in dic.entries.values())


def test_dump(dic, example):
    text = dic.dump(example.taxonomy)
    assert "Z\t3\t4\t69\tT1,T2,T3,T4,T5,T6,T8" in text
    assert "T8\t1\t5\t0.17" in text


def test_empty_sensitive_set(example, table2):
    dic = build_gidic(example, [], list(table2))
    assert dic.st_order == [] and dic.transactions == {}
    assert all(e.sc == 0 and e.rgisu == 0 and not e.st_tids for e in dic.entries.values())


def test_overlap_rejected(example, ids):
    with pytest.raises(ValueError):
        build_gidic(example, [ids("X")], [ids("X")])


def test_sensitive_transactions(example, example_sensitive):
    assert sensitive_transactions(example, example_sensitive) == set(TX_ROWS)


def test_st_ordering_ties_by_tid(dic):
    assert st_ordering(dic.transactions)[:4] == [2, 3, 4, 6]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31 - 1), st.data())
def test_matches_brute_force(seed, data):
    db = make_random_instance(seed, max_leaves=6, max_generalized=3)
    clhuis = mine_clhuis(db, max(1, db.total_utility // 5)).itemsets
    if not clhuis:
        return
    pool = sorted(clhuis)
    k = data.draw(st.integers(1, min(3, len(pool))))
    sensitive = data.draw(st.lists(st.sampled_from(pool), min_size=k, max_size=k, unique=True))
    non_sensitive = [p for p in pool if p not in sensitive]
    dic = build_gidic(db, sensitive, non_sensitive)
    tax = db.taxonomy

    expected = oracles.transaction_counts(db, sensitive, non_sensitive)
    assert {tid: (w.sc, w.nsc, w.wt) for tid, w in dic.transactions.items()} == expected
    for g, e in dic.entries.items():
        assert e.sc == oracles.item_counts(tax, sensitive, g)
        assert e.nsc == oracles.item_counts(tax, non_sensitive, g)
        assert e.rgisu == sum(gen_item_utility(g, db[t], tax) for t in expected)
        assert e.rgisu <= itemset_utility((g,), db)
        assert set(e.st_tids) <= set(expected)
