"""Toy and synthetic datasets.

``load_example`` returns the eight-transaction worked example with the
taxonomy root -> {X, Z, f}, X -> {Y, c}, Y -> {a, b}, Z -> {d, e}.
"""

from __future__ import annotations

from sklearn.utils import check_random_state

from .database import QuantitativeDatabase
from .taxonomy import Taxonomy

EXAMPLE_TAXONOMY = [("a", "Y"), ("b", "Y"), ("Y", "X"), ("c", "X"), ("d", "Z"), ("e", "Z")]
EXAMPLE_PROFITS = {"a": 5, "b": 1, "c": 3, "d": 3, "e": 2, "f": 1}
EXAMPLE_TRANSACTIONS = [
    {"a": 1, "b": 1, "d": 1},
    {"a": 2, "d": 3, "e": 1},
    {"a": 1, "b": 2, "c": 5, "d": 1, "e": 3},
    {"d": 4, "e": 3},
    {"a": 1, "b": 1, "d": 1},
    {"d": 5, "e": 2, "f": 2},
    {"a": 2, "c": 1},
    {"a": 1, "b": 4, "e": 3},
]


def load_example() -> QuantitativeDatabase:
    tax = Taxonomy.from_edges(EXAMPLE_TAXONOMY, items=EXAMPLE_PROFITS)
    profits = {tax.ids[k]: v for k, v in EXAMPLE_PROFITS.items()}
    rows = [
        (tid, {tax.ids[k]: q for k, q in row.items()})
        for tid, row in enumerate(EXAMPLE_TRANSACTIONS, start=1)
    ]
    return QuantitativeDatabase(rows, profits, tax)


def make_taxonomy(n_leaves: int, n_generalized: int, *, max_depth: int | None = None,
                  random_state=None) -> Taxonomy:
    """Random forest taxonomy with ``n_generalized`` internal nodes.

    Every generalized item gets at least one child. Leaves are named
    ``i0, i1, ...`` and generalized items ``g0, g1, ...``.
    """
    rng = check_random_state(random_state)
    if n_generalized > n_leaves:
        raise ValueError("need at least one leaf per generalized item")
    gen = [f"g{k}" for k in range(n_generalized)]
    leaves = [f"i{k}" for k in range(n_leaves)]
    depth = {}
    edges = []
    for k, g in enumerate(gen):
        if k == 0 or rng.rand() < 0.4:
            depth[g] = 1
            continue
        choices = [p for p in gen[:k] if max_depth is None or depth[p] < max_depth]
        if not choices:
            depth[g] = 1
            continue
        par = choices[rng.randint(len(choices))]
        depth[g] = depth[par] + 1
        edges.append((g, par))
    # internal nodes must stay internal: hand each one a leaf first
    order = rng.permutation(n_leaves)
    for k, g in enumerate(gen):
        edges.append((leaves[order[k]], g))
    for idx in order[n_generalized:]:
        if rng.rand() < 0.8 and gen:
            edges.append((leaves[idx], gen[rng.randint(len(gen))]))
    return Taxonomy.from_edges(edges, items=leaves)


def make_database(n_transactions: int, taxonomy: Taxonomy, *, max_length: int = 5,
                  max_quantity: int = 5, max_profit: int = 10,
                  random_state=None) -> QuantitativeDatabase:
    """Random quantitative database over the leaves of ``taxonomy``."""
    rng = check_random_state(random_state)
    leaves = list(taxonomy.leaf_items)
    profits = {v: int(rng.randint(1, max_profit + 1)) for v in leaves}
    rows = []
    for tid in range(1, n_transactions + 1):
        k = int(rng.randint(1, min(max_length, len(leaves)) + 1))
        items = sorted(int(v) for v in rng.choice(leaves, size=k, replace=False))
        rows.append((tid, {v: int(rng.randint(1, max_quantity + 1)) for v in items}))
    return QuantitativeDatabase(rows, profits, taxonomy)


def make_random_instance(random_state=None, *, max_leaves: int = 8, max_generalized: int = 4,
                         max_transactions: int = 12) -> QuantitativeDatabase:
    """Small random database with a random taxonomy, sized for brute-force checks."""
    rng = check_random_state(random_state)
    n_leaves = int(rng.randint(2, max_leaves + 1))
    n_gen = int(rng.randint(0, min(max_generalized, n_leaves) + 1))
    tax = make_taxonomy(n_leaves, n_gen, random_state=rng)
    n_tx = int(rng.randint(1, max_transactions + 1))
    return make_database(n_tx, tax, max_length=min(5, n_leaves), random_state=rng)


def make_retail_slice(n_transactions: int = 5000, n_leaves: int = 1560, n_generalized: int = 102,
                      max_level: int = 5, mean_length: float = 4.6,
                      random_state=None) -> QuantitativeDatabase:
    """Sparse retail-like database shaped after a grocery basket dataset.

    Item popularity follows a Zipf-like law so a few products dominate, and
    transaction lengths are Poisson around ``mean_length``.
    """
    rng = check_random_state(random_state)
    tax = make_taxonomy(n_leaves, n_generalized, max_depth=max_level - 1, random_state=rng)
    leaves = list(tax.leaf_items)
    weights = 1.0 / (rng.permutation(len(leaves)) + 1.0) ** 0.9
    weights /= weights.sum()
    profits = {v: int(rng.randint(1, 20)) for v in leaves}
    rows = []
    for tid in range(1, n_transactions + 1):
        k = max(1, min(28, int(rng.poisson(mean_length))))
        items = sorted(int(v) for v in rng.choice(leaves, size=k, replace=False, p=weights))
        rows.append((tid, {v: int(rng.randint(1, 6)) for v in items}))
    return QuantitativeDatabase(rows, profits, tax)
