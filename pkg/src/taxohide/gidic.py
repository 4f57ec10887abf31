"""Generalized-item dictionary used to pick victim items.

For every item (leaf or generalized) it holds the sensitive and non-sensitive
itemset counts, the item's utility summed over sensitive transactions
(RGISU) and the ids of the sensitive transactions it occurs in. For every
sensitive transaction it holds the number of sensitive and non-sensitive
itemsets it contains and the weight sc / (nsc + 1).

Transaction containment is resolved by intersecting the members' tid lists,
so the database is scanned exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .database import Itemset, QuantitativeDatabase, covered_items, node_utilities


@dataclass
class GIDicEntry:
    item: int
    sc: int = 0
    nsc: int = 0
    rgisu: int = 0
    st_tids: list[int] = field(default_factory=list)


@dataclass
class TransactionWeight:
    tid: int
    sc: int = 0
    nsc: int = 0

    @property
    def wt(self) -> Fraction:
        return Fraction(self.sc, self.nsc + 1)


@dataclass
class GIDic:
    entries: dict[int, GIDicEntry]
    transactions: dict[int, TransactionWeight]
    st_order: list[int]

    def __getitem__(self, item: int) -> GIDicEntry:
        return self.entries[item]

    def dump(self, taxonomy) -> str:
        """Tabular text rendering: one row per item, then one per sensitive transaction."""
        lines = ["item\tSC\tNSC\tRGISU\ttransactions"]
        for item in sorted(self.entries, key=lambda i: (not taxonomy.is_leaf(i), taxonomy.names[i])):
            e = self.entries[item]
            tids = ",".join(f"T{t}" for t in e.st_tids)
            lines.append(f"{taxonomy.names[item]}\t{e.sc}\t{e.nsc}\t{e.rgisu}\t{tids}")
        lines.append("")
        lines.append("tid\tSC\tNSC\tWt")
        for tid in self.st_order:
            w = self.transactions[tid]
            lines.append(f"T{tid}\t{w.sc}\t{w.nsc}\t{float(w.wt):.2f}")
        return "\n".join(lines) + "\n"


def sensitive_transactions(database: QuantitativeDatabase, sensitive) -> set[int]:
    """Tids of transactions containing at least one sensitive itemset."""
    tax = database.taxonomy
    out = set()
    for t in database:
        covered = covered_items(t, tax)
        if any(covered.issuperset(s) for s in sensitive):
            out.add(t.tid)
    return out


def _containing_tids(itemset: Itemset, entries: dict[int, GIDicEntry]) -> set[int]:
    lists = sorted((entries[g].st_tids for g in itemset), key=len)
    ts = set(lists[0])
    for other in lists[1:]:
        ts.intersection_update(other)
    return ts


def _closure(itemset: Itemset, taxonomy) -> set[int]:
    out: set[int] = set()
    for g in itemset:
        out |= taxonomy.closure(g)
    return out


def build_gidic(database: QuantitativeDatabase, sensitive, non_sensitive) -> GIDic:
    """Build the dictionary from one database scan plus tid-list intersections.

    ``sensitive`` and ``non_sensitive`` are collections of canonical itemsets
    and must be disjoint.
    """
    sensitive = [tuple(s) for s in sensitive]
    non_sensitive = [tuple(s) for s in non_sensitive]
    overlap = set(sensitive) & set(non_sensitive)
    if overlap:
        raise ValueError(f"{len(overlap)} itemset(s) are both sensitive and non-sensitive")
    tax = database.taxonomy
    entries = {i: GIDicEntry(i) for i in range(len(tax))}
    weights: dict[int, TransactionWeight] = {}

    for t in database:
        nu = node_utilities(t, tax)
        covered = nu.keys()
        if not any(covered >= set(s) for s in sensitive):
            continue
        weights[t.tid] = TransactionWeight(t.tid)
        for g, u in nu.items():
            e = entries[g]
            e.rgisu += u
            e.st_tids.append(t.tid)

    # one increment per (itemset, item), even when two members share an ancestor
    for s in sensitive:
        for g in _closure(s, tax):
            entries[g].sc += 1
        for tid in _containing_tids(s, entries):
            weights[tid].sc += 1
    for s in non_sensitive:
        for g in _closure(s, tax):
            entries[g].nsc += 1
        for tid in _containing_tids(s, entries):
            weights[tid].nsc += 1

    return GIDic(entries, weights, st_ordering(weights))


def st_ordering(weights: dict[int, TransactionWeight]) -> list[int]:
    """Sensitive tids by weight, heaviest first; ties go to the lower tid."""
    return sorted(weights, key=lambda tid: (-weights[tid].wt, tid))
