"""Item taxonomies: a forest of generalized items over leaf items.

Every item, leaf or generalized, gets a dense integer id. A virtual root sits
above the top-level nodes; it has no id and never appears in an itemset.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence


class TaxonomyError(ValueError):
    """Raised for structural problems: cycles, multiple parents, unknown items."""


class Taxonomy:
    """Immutable tree of items.

    Parameters
    ----------
    names : sequence of str
        Item names indexed by id.
    parent : sequence of int or None
        ``parent[i]`` is the id of the parent of item ``i``, or ``None`` when
        the item hangs directly under the virtual root.
    """

    def __init__(self, names: Sequence[str], parent: Sequence[int | None]):
        if len(names) != len(parent):
            raise TaxonomyError("names and parent must have the same length")
        self.names = tuple(names)
        self.parent = tuple(parent)
        self.ids = {name: i for i, name in enumerate(self.names)}
        if len(self.ids) != len(self.names):
            raise TaxonomyError("duplicate item name")

        n = len(self.names)
        children: list[list[int]] = [[] for _ in range(n)]
        for child, par in enumerate(self.parent):
            if par is None:
                continue
            if not 0 <= par < n:
                raise TaxonomyError(f"unknown parent id {par}")
            if par == child:
                raise TaxonomyError(f"item {self.names[child]!r} is its own parent")
            children[par].append(child)
        self.children = tuple(tuple(c) for c in children)
        self.roots = tuple(i for i in range(n) if self.parent[i] is None)

        ancestors: list[tuple[int, ...]] = []
        for i in range(n):
            chain = []
            node = self.parent[i]
            while node is not None:
                if node == i or len(chain) > n:
                    raise TaxonomyError(f"cycle through {self.names[i]!r}")
                chain.append(node)
                node = self.parent[node]
            ancestors.append(tuple(chain))
        # nearest ancestor first
        self.ancestors = tuple(ancestors)
        self.levels = tuple(len(a) + 1 for a in ancestors)

        desc: list[set[int]] = [set() for _ in range(n)]
        for i, anc in enumerate(ancestors):
            for a in anc:
                desc[a].add(i)
        self._descendants = tuple(frozenset(d) for d in desc)
        self._leaves = tuple(
            frozenset(d for d in desc[i] if not children[d]) if children[i] else frozenset((i,))
            for i in range(n)
        )

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str]], items: Iterable[str] = ()) -> Taxonomy:
        """Build a taxonomy from ``(child, parent)`` name pairs.

        Names are numbered in order of first appearance in ``edges`` and then
        ``items``. Names that are never a child become top-level nodes.
        """
        names: list[str] = []
        ids: dict[str, int] = {}
        parent: dict[int, int] = {}

        def intern(name):
            if name not in ids:
                ids[name] = len(names)
                names.append(name)
            return ids[name]

        for child, par in edges:
            c, p = intern(child), intern(par)
            if c == p:
                raise TaxonomyError(f"item {child!r} is its own parent")
            if c in parent and parent[c] != p:
                raise TaxonomyError(
                    f"item {child!r} has two parents: {names[parent[c]]!r} and {par!r}"
                )
            parent[c] = p
        for name in items:
            intern(name)
        return cls(names, [parent.get(i) for i in range(len(names))])

    def extended(self, items: Iterable[str]) -> Taxonomy:
        """Return a taxonomy with unseen ``items`` added as top-level leaves."""
        new = [name for name in dict.fromkeys(items) if name not in self.ids]
        if not new:
            return self
        return Taxonomy(self.names + tuple(new), self.parent + (None,) * len(new))

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return (
            isinstance(other, Taxonomy)
            and self.names == other.names
            and self.parent == other.parent
        )

    def __hash__(self):
        return hash((self.names, self.parent))

    def __repr__(self):
        return f"Taxonomy(n_items={len(self)}, n_generalized={len(self.generalized_items)})"

    def _check(self, item: int) -> int:
        if not isinstance(item, int) or not 0 <= item < len(self.names):
            raise TaxonomyError(f"unknown item id {item!r}")
        return item

    def id_of(self, name: str) -> int:
        try:
            return self.ids[name]
        except KeyError:
            raise TaxonomyError(f"unknown item {name!r}") from None

    def name_of(self, item: int) -> str:
        return self.names[self._check(item)]

    def is_leaf(self, item: int) -> bool:
        return not self.children[self._check(item)]

    @property
    def leaf_items(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self)) if not self.children[i])

    @property
    def generalized_items(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self)) if self.children[i])

    def leaves(self, item: int) -> frozenset[int]:
        """Leaf items reachable from ``item``; a leaf is its own leaf set."""
        return self._leaves[self._check(item)]

    def descendants(self, item: int) -> frozenset[int]:
        """All nodes below ``item``, excluding ``item`` itself."""
        return self._descendants[self._check(item)]

    def level(self, item: int) -> int:
        """Number of edges from the virtual root."""
        return self.levels[self._check(item)]

    def related(self, a: int, b: int) -> bool:
        """True when ``a`` and ``b`` are equal or one descends from the other."""
        return a == b or a in self.ancestors[b] or b in self.ancestors[a]

    def closure(self, item: int) -> frozenset[int]:
        """``item`` together with all of its ancestors and descendants."""
        return self._descendants[self._check(item)] | {item} | set(self.ancestors[item])

    def edges(self) -> list[tuple[str, str]]:
        return [
            (self.names[c], self.names[p])
            for c, p in enumerate(self.parent)
            if p is not None
        ]
