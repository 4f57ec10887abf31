"""Hide sensitive cross-level itemsets by deleting or reducing leaf items.

Three victim strategies share one hiding engine:

``min-rf``
    victim is the member with the smallest RGISU; its leaves are tried in
    ascending RGISU order.
``max-rf``
    victim is the member with the largest RGISU; leaves in descending order.
``best-nscf``
    victim has the lowest NSC and highest SC among the members, else the
    lowest NSC and lowest RGISU; leaves in ascending order.

Sensitive itemsets are processed by their victim's RGISU, largest first.
Each one walks the sensitive transactions in weight order and removes
victim-leaf utility until its residual utility is below ``minutil``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import ceil

from sklearn.base import BaseEstimator, TransformerMixin

from .database import (
    Itemset,
    QuantitativeDatabase,
    gen_item_utility,
    itemset_transaction_utility,
    itemset_utility,
)
from .gidic import GIDic, build_gidic
from .miner import mine_clhuis
from .validation import check_database, check_itemsets, check_minutil, check_strategy

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Edit:
    tid: int
    item: int
    kind: str  # "delete" | "reduce"
    delta: int  # quantity removed


@dataclass
class EditLog:
    edits: list[Edit] = field(default_factory=list)

    @property
    def modified_tids(self) -> set[int]:
        return {e.tid for e in self.edits}

    def __len__(self):
        return len(self.edits)

    def __iter__(self):
        return iter(self.edits)

    def replay(self, database: QuantitativeDatabase) -> QuantitativeDatabase:
        """Apply the edits to a copy of ``database``."""
        out = database.copy()
        for e in self.edits:
            t = out[e.tid]
            if e.kind == "delete":
                if t.entries[e.item] != e.delta:
                    raise ValueError(f"edit {e} does not match quantity {t.entries[e.item]}")
                t.remove(e.item)
            else:
                t.reduce(e.item, e.delta)
        return out


@dataclass
class HidingTask:
    itemset: Itemset
    victim: int
    victim_rgisu: int


def select_victim(itemset: Itemset, dic: GIDic, strategy: str) -> int:
    """Member of ``itemset`` chosen for modification; ties go to the smallest id."""
    strategy = check_strategy(strategy)
    ent = dic.entries
    members = sorted(itemset)
    if strategy == "min-rf":
        return min(members, key=lambda g: (ent[g].rgisu, g))
    if strategy == "max-rf":
        return min(members, key=lambda g: (-ent[g].rgisu, g))
    min_nsc = min(ent[g].nsc for g in members)
    max_sc = max(ent[g].sc for g in members)
    min_rgisu = min(ent[g].rgisu for g in members)
    for g in members:
        if ent[g].nsc == min_nsc and ent[g].sc == max_sc:
            return g
    for g in members:
        if ent[g].nsc == min_nsc and ent[g].rgisu == min_rgisu:
            return g
    return min(members, key=lambda g: (ent[g].nsc, ent[g].rgisu, g))


def victim_leaves(victim: int, dic: GIDic, taxonomy, strategy: str) -> list[int]:
    descending = check_strategy(strategy) == "max-rf"
    sign = -1 if descending else 1
    return sorted(taxonomy.leaves(victim), key=lambda v: (sign * dic.entries[v].rgisu, v))


def order_tasks(sensitive, victims, dic: GIDic) -> list[HidingTask]:
    """Tasks by victim RGISU, largest first; stable on input order."""
    tasks = [HidingTask(s, v, dic.entries[v].rgisu) for s, v in zip(sensitive, victims)]
    return sorted(tasks, key=lambda t: -t.victim_rgisu)


class _Engine:
    """Mutable sanitization state: database copy, residual utilities, edit log."""

    def __init__(self, database, sensitive, minutil, dic, check=False):
        self.db = database
        self.tax = database.taxonomy
        self.minutil = minutil
        self.dic = dic
        self.check = check
        self.log = EditLog()
        self.residual = {s: itemset_utility(s, database) for s in sensitive}
        self._by_node: dict[int, list[Itemset]] = {}
        for s in sensitive:
            for g in s:
                self._by_node.setdefault(g, []).append(s)

    def _affected(self, leaf: int) -> list[Itemset]:
        out = list(self._by_node.get(leaf, ()))
        for a in self.tax.ancestors[leaf]:
            out.extend(self._by_node.get(a, ()))
        return out

    def _edit(self, t, leaf: int, diu: int | None) -> None:
        affected = self._affected(leaf)
        before = [itemset_transaction_utility(s, t, self.tax) for s in affected]
        q = t.entries[leaf]
        if diu is None or diu >= q:
            t.remove(leaf)
            self.log.edits.append(Edit(t.tid, leaf, "delete", q))
        else:
            t.reduce(leaf, diu)
            self.log.edits.append(Edit(t.tid, leaf, "reduce", diu))
        for s, b in zip(affected, before):
            if b:
                self.residual[s] -= b - itemset_transaction_utility(s, t, self.tax)
        if self.check:
            self.verify()

    def verify(self) -> None:
        for s, r in self.residual.items():
            actual = itemset_utility(s, self.db)
            if actual != r:
                raise AssertionError(f"residual utility of {s} is {r}, recomputed {actual}")

    def hide(self, task: HidingTask, strategy: str) -> int:
        """Run one hiding task; returns the number of edits it made."""
        s = task.itemset
        n_before = len(self.log)
        diff = self.residual[s] - self.minutil + 1
        if diff <= 0:
            return 0
        leaves = victim_leaves(task.victim, self.dic, self.tax, strategy)
        p = self.db.profits
        for tid in self.dic.st_order:
            if diff <= 0:
                break
            t = self.db[tid]
            if itemset_transaction_utility(s, t, self.tax) == 0:
                continue
            for leaf in leaves:
                if diff <= 0:
                    break
                if leaf not in t.entries:
                    continue
                u_leaf = t.utility(leaf)
                if diff >= u_leaf:
                    if u_leaf == gen_item_utility(task.victim, t, self.tax):
                        diff -= itemset_transaction_utility(s, t, self.tax)
                    else:
                        diff -= u_leaf
                    self._edit(t, leaf, None)
                else:
                    self._edit(t, leaf, ceil(diff / p[leaf]))
                    diff = 0
            if self.check and diff > 0 and diff != self.residual[s] - self.minutil + 1:
                raise AssertionError(f"diff {diff} out of sync with residual of {s}")
        if self.residual[s] >= self.minutil:
            raise AssertionError(f"itemset {s} still has utility {self.residual[s]}")
        return len(self.log) - n_before


def hide_one(task: HidingTask, database: QuantitativeDatabase, dic: GIDic, strategy: str,
             minutil: int, live_utilities: dict | None = None, check: bool = False) -> EditLog:
    """Hide a single itemset in place; returns the edits made.

    ``live_utilities`` maps sensitive itemsets to their current utility and is
    updated in place; it defaults to ``{task.itemset: u(task.itemset)}``.
    """
    if live_utilities is None:
        live_utilities = {task.itemset: itemset_utility(task.itemset, database)}
    engine = _Engine(database, list(live_utilities), minutil, dic, check=check)
    for s, r in live_utilities.items():
        if engine.residual[s] != r:
            raise AssertionError(f"live utility of {s} is {r}, recomputed {engine.residual[s]}")
    engine.hide(task, strategy)
    live_utilities.update(engine.residual)
    return engine.log


def _check_inputs(database, minutil, sensitive, clhuis):
    database = check_database(database)
    minutil = check_minutil(minutil, allow_zero=False)
    sensitive = check_itemsets(sensitive, database.taxonomy)
    if clhuis is None:
        clhuis = mine_clhuis(database, minutil).itemsets
    clhuis = dict(clhuis)
    for s in sensitive:
        if s not in clhuis:
            raise ValueError(f"sensitive itemset {s} is not a mined high-utility itemset")
        if itemset_utility(s, database) < minutil:
            raise ValueError(f"sensitive itemset {s} is below minutil")
    return database, minutil, sensitive, clhuis


def sanitize(database: QuantitativeDatabase, minutil: int, sensitive, clhuis=None,
             strategy: str = "min-rf", check: bool = False):
    """Sanitize a copy of ``database``.

    Returns ``(sanitized, edit_log, gidic, tasks)``. ``clhuis`` maps itemsets
    to utilities and is mined when omitted.
    """
    database, minutil, sensitive, clhuis = _check_inputs(database, minutil, sensitive, clhuis)
    strategy = check_strategy(strategy)
    sens = set(sensitive)
    non_sensitive = [p for p in clhuis if p not in sens]
    dic = build_gidic(database, sensitive, non_sensitive)
    victims = [select_victim(s, dic, strategy) for s in sensitive]
    tasks = order_tasks(sensitive, victims, dic)

    out = database.copy()
    engine = _Engine(out, sensitive, minutil, dic, check=check)
    for task in tasks:
        n = engine.hide(task, strategy)
        logger.debug("hid %s via %s with %d edits", task.itemset, task.victim, n)
    return out, engine.log, dic, tasks


class Sanitizer(BaseEstimator, TransformerMixin):
    """Hide sensitive cross-level high-utility itemsets.

    Parameters
    ----------
    minutil : int
        Utility threshold; every sensitive itemset ends strictly below it.
    sensitive_itemsets : list of tuple of int
        Itemsets to hide, as item ids. Each must be a high-utility itemset
        of the fitted database.
    strategy : {"min-rf", "max-rf", "best-nscf"}, default="min-rf"
        Victim item selection rule.
    check : bool, default=False
        Recompute every residual utility from scratch after each edit.
        Quadratic; meant for tests.

    Attributes
    ----------
    clhuis_ : dict
        High-utility itemsets of the fitted database with their utilities.
    gidic_ : GIDic
    victims_ : dict
        Sensitive itemset -> chosen victim item.
    tasks_ : list of HidingTask
        Processing order.
    edit_log_ : EditLog
        Edits made by the last ``transform``.
    """

    def __init__(self, minutil=1, sensitive_itemsets=(), strategy="min-rf", check=False):
        self.minutil = minutil
        self.sensitive_itemsets = sensitive_itemsets
        self.strategy = strategy
        self.check = check

    def fit(self, D, y=None, clhuis=None):
        D, minutil, sensitive, clhuis = _check_inputs(
            D, self.minutil, self.sensitive_itemsets, clhuis
        )
        strategy = check_strategy(self.strategy)
        sens = set(sensitive)
        self.clhuis_ = clhuis
        self.sensitive_ = sensitive
        self.gidic_ = build_gidic(D, sensitive, [p for p in clhuis if p not in sens])
        self.victims_ = {s: select_victim(s, self.gidic_, strategy) for s in sensitive}
        self.tasks_ = order_tasks(sensitive, [self.victims_[s] for s in sensitive], self.gidic_)
        self._fit_database = D.copy()
        return self

    def transform(self, D):
        """Return a sanitized copy of ``D``, which must be the fitted database."""
        if not hasattr(self, "gidic_"):
            from sklearn.exceptions import NotFittedError

            raise NotFittedError("Sanitizer is not fitted yet")
        D = check_database(D)
        if D != self._fit_database:
            raise ValueError("transform expects the database the sanitizer was fitted on")
        out = D.copy()
        engine = _Engine(out, self.sensitive_, self.minutil, self.gidic_, check=self.check)
        strategy = check_strategy(self.strategy)
        for task in self.tasks_:
            engine.hide(task, strategy)
        self.edit_log_ = engine.log
        self.residual_utilities_ = dict(engine.residual)
        return out

    def fit_transform(self, D, y=None, clhuis=None):
        return self.fit(D, clhuis=clhuis).transform(D)
