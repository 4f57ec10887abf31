"""Brute-force references, written against raw data only.

Nothing here calls the library's utility, containment or mining code; leaf
sets come from walking parent pointers and utilities from raw quantities.
"""

from fractions import Fraction
from itertools import combinations


def leaf_sets(taxonomy):
    n = len(taxonomy.parent)
    has_child = {p for p in taxonomy.parent if p is not None}
    out = {i: set() for i in range(n)}
    for v in range(n):
        if v in has_child:
            continue
        node = v
        while node is not None:
            out[node].add(v)
            node = taxonomy.parent[node]
    return out


def ancestors(taxonomy, item):
    out = []
    node = taxonomy.parent[item]
    while node is not None:
        out.append(node)
        node = taxonomy.parent[node]
    return out


def raw_rows(database):
    """[(tid, {leaf: utility})] straight from quantities and profits."""
    return [
        (t.tid, {v: q * database.profits[v] for v, q in t.entries.items()})
        for t in database.transactions
    ]


def utility(itemset, database, leaves=None):
    leaves = leaves or leaf_sets(database.taxonomy)
    total = 0
    for _, row in raw_rows(database):
        if all(any(v in row for v in leaves[g]) for g in itemset):
            total += sum(row.get(v, 0) for g in itemset for v in leaves[g])
    return total


def contains(row_items, itemset, leaves):
    return all(any(v in row_items for v in leaves[g]) for g in itemset)


def valid_itemsets(taxonomy):
    """Every nonempty ancestor-free subset of the taxonomy nodes."""
    n = len(taxonomy.parent)
    anc = {i: set(ancestors(taxonomy, i)) for i in range(n)}
    for k in range(1, n + 1):
        for combo in combinations(range(n), k):
            if any(a in anc[b] or b in anc[a] for a, b in combinations(combo, 2)):
                continue
            yield combo


def mine(database, minutil):
    """{itemset: utility} for every supported itemset with utility >= minutil."""
    leaves = leaf_sets(database.taxonomy)
    rows = raw_rows(database)
    out = {}
    for p in valid_itemsets(database.taxonomy):
        support = [row for _, row in rows if contains(row, p, leaves)]
        if not support:
            continue
        u = sum(row.get(v, 0) for row in support for g in p for v in leaves[g])
        if u >= minutil:
            out[p] = u
    return out


def item_counts(taxonomy, itemsets, item):
    """Number of itemsets holding ``item``, one of its ancestors or descendants."""
    anc = set(ancestors(taxonomy, item))
    desc = {j for j in range(len(taxonomy.parent)) if item in ancestors(taxonomy, j)}
    related = {item} | anc | desc
    return sum(1 for s in itemsets if related & set(s))


def transaction_counts(database, sensitive, non_sensitive):
    """{tid: (sc, nsc, wt)} over transactions containing a sensitive itemset."""
    leaves = leaf_sets(database.taxonomy)
    out = {}
    for tid, row in raw_rows(database):
        sc = sum(contains(row, s, leaves) for s in sensitive)
        if not sc:
            continue
        nsc = sum(contains(row, s, leaves) for s in non_sensitive)
        out[tid] = (sc, nsc, Fraction(sc, nsc + 1))
    return out
