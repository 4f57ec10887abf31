"""Cross-level high-utility itemset mining.

Depth-first extension over a fixed item order (ancestors before descendants),
with one utility list per item: ``{tid: u(item, T)}``. A prefix is abandoned
once the summed transaction utility of its supporting transactions (gwu)
drops below ``minutil``; since members of an itemset are never related in the
taxonomy, their leaf sets are disjoint and u(P, T) <= TU(T), so the bound is
safe for every extension.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from sklearn.base import BaseEstimator

from .database import Itemset, QuantitativeDatabase, itemset_contains, node_utilities
from .validation import check_database, check_minutil

logger = logging.getLogger(__name__)


@dataclass
class MiningResult:
    itemsets: dict[Itemset, int]
    minutil: int
    n_candidates: int = 0
    n_pruned: int = 0
    stats: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.itemsets)

    def __contains__(self, itemset):
        return tuple(sorted(itemset)) in self.itemsets

    def sorted_itemsets(self) -> list[Itemset]:
        return sorted(self.itemsets)


def utility_lists(database: QuantitativeDatabase) -> dict[int, dict[int, int]]:
    """Vertical layout: item -> {tid: utility of the item in that transaction}."""
    lists: dict[int, dict[int, int]] = {}
    for t in database:
        for item, u in node_utilities(t, database.taxonomy).items():
            lists.setdefault(item, {})[t.tid] = u
    return lists


def gwu(itemset, database: QuantitativeDatabase) -> int:
    """Summed TU of the transactions containing ``itemset``."""
    tax = database.taxonomy
    return sum(t.tu for t in database if itemset_contains(t, itemset, tax))


def mine_clhuis(database: QuantitativeDatabase, minutil: int) -> MiningResult:
    """All itemsets (leaf and generalized members) with utility >= ``minutil``.

    Only itemsets supported by at least one transaction are reported, which
    matters only for ``minutil == 0``.
    """
    database = check_database(database)
    minutil = check_minutil(minutil)
    tax = database.taxonomy
    tu = {t.tid: t.tu for t in database}
    lists = utility_lists(database)

    def bound(ul):
        return sum(tu[tid] for tid in ul)

    order = sorted(
        (i for i, ul in lists.items() if bound(ul) >= minutil),
        key=lambda i: (tax.levels[i], i),
    )
    found: dict[Itemset, int] = {}
    n_candidates = 0
    n_pruned = len(lists) - len(order)

    def extend(prefix, plist, candidates):
        nonlocal n_candidates, n_pruned
        for k, item in enumerate(candidates):
            ilist = lists[item]
            if len(plist) <= len(ilist):
                ul = {tid: u + ilist[tid] for tid, u in plist.items() if tid in ilist}
            else:
                ul = {tid: u + plist[tid] for tid, u in ilist.items() if tid in plist}
            n_candidates += 1
            if not ul or bound(ul) < minutil:
                n_pruned += 1
                continue
            itemset = prefix + (item,)
            u = sum(ul.values())
            if u >= minutil:
                found[tuple(sorted(itemset))] = u
            rest = [c for c in candidates[k + 1:] if not tax.related(c, item)]
            if rest:
                extend(itemset, ul, rest)

    for k, item in enumerate(order):
        n_candidates += 1
        ul = lists[item]
        u = sum(ul.values())
        if u >= minutil:
            found[(item,)] = u
        rest = [c for c in order[k + 1:] if not tax.related(c, item)]
        extend((item,), ul, rest)

    logger.info("mined %d itemsets at minutil=%d (%d candidates, %d pruned)",
                len(found), minutil, n_candidates, n_pruned)
    return MiningResult(dict(sorted(found.items())), minutil, n_candidates, n_pruned)


class CLHUIMiner(BaseEstimator):
    """Cross-level high-utility itemset miner.

    Parameters
    ----------
    minutil : int, default=1
        Minimum utility an itemset needs to be reported.

    Attributes
    ----------
    itemsets_ : dict
        Mapping from itemset (sorted tuple of item ids) to its utility.
    result_ : MiningResult
        Full result including candidate and pruning counters.

    Examples
    --------
    >>> from taxohide.datasets import load_example
    >>> miner = CLHUIMiner(minutil=50).fit(load_example())
    >>> len(miner.itemsets_)
    9
    """

    def __init__(self, minutil=1):
        self.minutil = minutil

    def fit(self, D, y=None):
        self.result_ = mine_clhuis(D, self.minutil)
        self.itemsets_ = self.result_.itemsets
        self.taxonomy_ = D.taxonomy
        return self

    def discover(self, names: bool = False) -> dict:
        """Mined itemsets; with ``names=True`` keys are tuples of item names."""
        if not names:
            return dict(self.itemsets_)
        tax = self.taxonomy_
        return {tuple(tax.names[i] for i in p): u for p, u in self.itemsets_.items()}

    def fit_discover(self, D, names: bool = False) -> dict:
        return self.fit(D).discover(names=names)
