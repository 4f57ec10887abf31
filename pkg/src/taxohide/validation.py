"""Input validation shared by the estimators."""

from __future__ import annotations

import numbers

from .database import Itemset, QuantitativeDatabase, make_itemset

STRATEGIES = ("min-rf", "max-rf", "best-nscf")


def check_database(database) -> QuantitativeDatabase:
    if not isinstance(database, QuantitativeDatabase):
        raise TypeError(
            f"expected a QuantitativeDatabase, got {type(database).__name__}"
        )
    return database


def check_minutil(minutil, *, allow_zero: bool = True) -> int:
    if isinstance(minutil, bool) or not isinstance(minutil, numbers.Integral):
        raise TypeError(f"minutil must be an integer, got {minutil!r}")
    lower = 0 if allow_zero else 1
    if minutil < lower:
        raise ValueError(f"minutil must be >= {lower}, got {minutil}")
    return int(minutil)


def check_strategy(strategy: str) -> str:
    key = strategy.lower().replace("_", "-")
    if key not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    return key


def check_itemsets(itemsets, taxonomy) -> list[Itemset]:
    """Canonicalize a collection of itemsets, dropping duplicates but keeping order."""
    out = []
    seen = set()
    for members in itemsets:
        p = make_itemset(members, taxonomy)
        if not p:
            raise ValueError("empty itemset")
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out
