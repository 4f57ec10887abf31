from fractions import Fraction

import pytest

from taxohide.metrics import (
    UndefinedMetricError,
    artificial_cost,
    database_utility_similarity,
    evaluate,
    hiding_failure,
    itemset_utility_similarity,
    missing_cost,
    transaction_modification_ratio,
)
from taxohide.miner import mine_clhuis
from taxohide.sanitizer import EditLog, sanitize

A, B, C, D, E = (1,), (2,), (1, 3), (2, 4), (5,)


def test_hiding_failure():
    assert hiding_failure([A, B, C], []) == 0
    assert hiding_failure([A, B, C], [C, D]) == Fraction(1, 3)
    assert hiding_failure([], [A]) == 0


def test_hiding_failure_ignores_member_order():
    assert hiding_failure([(3, 1)], [(1, 3)]) == 1


def test_missing_cost():
    assert missing_cost([A, B, C, D, E], [A, B, C]) == Fraction(2, 5)
    assert missing_cost([A], [A]) == 0
    assert missing_cost([], []) == 0


def test_artificial_cost():
    assert artificial_cost([A], [A, B]) == Fraction(1, 2)
    assert artificial_cost([A, B], [A, B]) == 0
    assert artificial_cost([A], []) == 0


def test_itemset_utility_similarity():
    assert itemset_utility_similarity({A: 60, B: 40}, {A: 55}) == Fraction(55, 100)
    assert itemset_utility_similarity({A: 7}, {}) == 0
    with pytest.raises(UndefinedMetricError):
        itemset_utility_similarity({}, {})


def test_database_utility_similarity(example):
    db = example.copy()
    db[1].remove(example.taxonomy.ids["d"])
    assert database_utility_similarity(example, db) == Fraction(134, 137)
    assert database_utility_similarity(example, example) == 1


def test_transaction_modification_ratio():
    assert transaction_modification_ratio([2, 2, 5], 8) == Fraction(1, 4)
    assert transaction_modification_ratio([], 8) == 0
    with pytest.raises(UndefinedMetricError):
        transaction_modification_ratio([], 0)


def test_no_edit_run(example):
    clhuis = mine_clhuis(example, 50).itemsets
    rep = evaluate(example, example.copy(), [], clhuis, clhuis, EditLog())
    assert (rep.hf, rep.mc, rep.ac, rep.ius, rep.dus, rep.tmr) == (0, 0, 0, 1, 1, 0)


def test_golden_report(example, example_sensitive):
    clhuis = mine_clhuis(example, 50).itemsets
    out, log, _, _ = sanitize(example, 50, example_sensitive, clhuis, "min-rf")
    after = mine_clhuis(out, 50).itemsets
    rep = evaluate(example, out, example_sensitive, clhuis, after, log)
    c = rep.counts
    assert rep.hf == 0 and rep.ac == 0
    assert rep.mc == Fraction(c["n_non_sensitive_lost"], c["n_non_sensitive"])
    assert rep.ius == Fraction(sum(after.values()), sum(clhuis.values()))
    assert rep.dus == Fraction(out.total_utility, 137)
    assert rep.tmr == Fraction(1, 8)
    doc = rep.as_dict()
    assert doc["exact"]["tmr"] == "1/8" and doc["tmr"] == 0.125
