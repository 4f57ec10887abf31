"""Quantitative transaction databases and utility arithmetic over a taxonomy.

Utilities are exact integers: an item's utility in a transaction is its
quantity times its unit profit, and a generalized item's utility is the sum
over its leaf items present in the transaction.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping

from .taxonomy import Taxonomy, TaxonomyError

Itemset = tuple[int, ...]


class ItemsetError(ValueError):
    """Raised when an itemset contains an ancestor/descendant pair."""


def make_itemset(members: Iterable[int], taxonomy: Taxonomy) -> Itemset:
    """Canonical sorted tuple of ``members``, validated against ``taxonomy``."""
    items = tuple(sorted(set(members)))
    for item in items:
        taxonomy._check(item)
    for i, a in enumerate(items):
        for b in items[i + 1:]:
            if taxonomy.related(a, b):
                raise ItemsetError(
                    f"{taxonomy.names[a]!r} and {taxonomy.names[b]!r} are in an "
                    "ancestor/descendant relation"
                )
    return items


class Transaction:
    """One transaction: leaf item -> positive quantity.

    ``tu`` is kept equal to the sum of quantity times unit profit over the
    entries through every mutation.
    """

    __slots__ = ("tid", "entries", "tu", "_profits")

    def __init__(self, tid: int, entries: Mapping[int, int], profits: Mapping[int, int]):
        self.tid = tid
        self._profits = profits
        self.entries: dict[int, int] = {}
        for item, q in entries.items():
            if q <= 0:
                raise ValueError(f"transaction {tid}: quantity of item {item} must be positive")
            self.entries[item] = q
        self.tu = sum(q * profits[i] for i, q in self.entries.items())

    def __contains__(self, item):
        return item in self.entries

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, Transaction)
            and self.tid == other.tid
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"Transaction(tid={self.tid}, entries={self.entries})"

    def utility(self, item: int) -> int:
        """Utility of a leaf item, 0 when absent."""
        q = self.entries.get(item)
        return 0 if q is None else q * self._profits[item]

    def remove(self, item: int) -> int:
        """Delete a leaf entry; returns the removed quantity."""
        q = self.entries.pop(item)
        self.tu -= q * self._profits[item]
        return q

    def reduce(self, item: int, delta: int) -> None:
        q = self.entries[item]
        if not 0 < delta < q:
            raise ValueError(f"cannot reduce quantity {q} by {delta}; delete the item instead")
        self.entries[item] = q - delta
        self.tu -= delta * self._profits[item]

    def copy(self) -> Transaction:
        return Transaction(self.tid, self.entries, self._profits)


class QuantitativeDatabase:
    """Ordered transactions, a unit-profit table and the taxonomy they refer to.

    Parameters
    ----------
    transactions : iterable of (tid, {leaf id: quantity})
    profits : mapping leaf id -> positive int
    taxonomy : Taxonomy
    """

    def __init__(self, transactions, profits: Mapping[int, int], taxonomy: Taxonomy):
        self.taxonomy = taxonomy
        self.profits = dict(profits)
        for item, p in self.profits.items():
            if not taxonomy.is_leaf(item):
                raise TaxonomyError(f"generalized item {taxonomy.names[item]!r} has a unit profit")
            if p <= 0:
                raise ValueError(f"unit profit of {taxonomy.names[item]!r} must be positive")
        self.transactions: list[Transaction] = []
        self._by_tid: dict[int, Transaction] = {}
        for tid, entries in transactions:
            if tid in self._by_tid:
                raise ValueError(f"duplicate transaction id {tid}")
            for item in entries:
                if not taxonomy.is_leaf(item):
                    raise TaxonomyError(
                        f"transaction {tid}: {taxonomy.names[item]!r} is not a leaf item"
                    )
                if item not in self.profits:
                    raise ValueError(
                        f"transaction {tid}: no unit profit for {taxonomy.names[item]!r}"
                    )
            t = Transaction(tid, entries, self.profits)
            self.transactions.append(t)
            self._by_tid[tid] = t

    def __len__(self):
        return len(self.transactions)

    def __iter__(self):
        return iter(self.transactions)

    def __getitem__(self, tid: int) -> Transaction:
        return self._by_tid[tid]

    def __eq__(self, other):
        return (
            isinstance(other, QuantitativeDatabase)
            and self.taxonomy == other.taxonomy
            and self.transactions == other.transactions
            and all(self.profits[i] == other.profits.get(i) for t in self for i in t.entries)
        )

    def __repr__(self):
        return f"QuantitativeDatabase(n_transactions={len(self)}, n_items={len(self.taxonomy)})"

    def copy(self) -> QuantitativeDatabase:
        return QuantitativeDatabase(
            ((t.tid, t.entries) for t in self.transactions), self.profits, self.taxonomy
        )

    @property
    def total_utility(self) -> int:
        return sum(t.tu for t in self.transactions)

    def item_utility(self, item: int, transaction: Transaction) -> int:
        return gen_item_utility(item, transaction, self.taxonomy)

    def itemset_utility(self, itemset: Iterable[int]) -> int:
        return itemset_utility(itemset, self)


def transaction_utility(transaction: Transaction) -> int:
    return transaction.tu


def gen_item_utility(item: int, transaction: Transaction, taxonomy: Taxonomy) -> int:
    """Utility of a leaf or generalized item in one transaction (0 if absent)."""
    if not taxonomy.children[item]:
        return transaction.utility(item)
    leaves = taxonomy.leaves(item)
    entries = transaction.entries
    if len(entries) < len(leaves):
        return sum(transaction.utility(v) for v in entries if v in leaves)
    return sum(transaction.utility(v) for v in leaves if v in entries)


def node_utilities(transaction: Transaction, taxonomy: Taxonomy) -> dict[int, int]:
    """Utility of every taxonomy node covered by ``transaction``."""
    out: dict[int, int] = {}
    for v in transaction.entries:
        u = transaction.utility(v)
        out[v] = out.get(v, 0) + u
        for a in taxonomy.ancestors[v]:
            out[a] = out.get(a, 0) + u
    return out


def covered_items(transaction: Transaction, taxonomy: Taxonomy) -> set[int]:
    """Items present in ``transaction``, leaf or generalized."""
    out = set(transaction.entries)
    for v in transaction.entries:
        out.update(taxonomy.ancestors[v])
    return out


def itemset_contains(transaction: Transaction, itemset: Iterable[int], taxonomy: Taxonomy) -> bool:
    """Every member has at least one of its leaves in ``transaction``."""
    entries = transaction.entries
    return all(
        item in entries if not taxonomy.children[item]
        else not taxonomy.leaves(item).isdisjoint(entries)
        for item in itemset
    )


def itemset_transaction_utility(
    itemset: Iterable[int], transaction: Transaction, taxonomy: Taxonomy
) -> int:
    """u(P, T), or 0 when ``transaction`` does not contain ``itemset``."""
    itemset = tuple(itemset)
    if not itemset_contains(transaction, itemset, taxonomy):
        return 0
    return sum(gen_item_utility(g, transaction, taxonomy) for g in itemset)


def itemset_utility(itemset: Iterable[int], database: QuantitativeDatabase) -> int:
    """Sum of u(P, T) over the transactions that contain ``itemset``."""
    itemset = tuple(itemset)
    tax = database.taxonomy
    return sum(itemset_transaction_utility(itemset, t, tax) for t in database)
