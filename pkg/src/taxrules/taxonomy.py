"""Is-a forests over items and the lookups generalization depends on.

A taxonomy is a forest: every node has at most one parent and parent chains
terminate at a root. A taxonomy set is a list of forests with pairwise
disjoint node sets, so an item has a unique home tree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import Item, Itemset, check_item


class TaxonomyError(ValueError):
    pass


class DuplicateParentError(TaxonomyError):
    def __init__(self, child: str):
        super().__init__(f"node {child!r} has more than one parent; taxonomies must be forests")
        self.child = child


class CycleError(TaxonomyError):
    def __init__(self, node: str):
        super().__init__(f"taxonomy contains a cycle through {node!r}")
        self.node = node


@dataclass(frozen=True)
class TaxonomyEdge:
    child: Item
    parent: Item

    def __post_init__(self):
        check_item(self.child)
        check_item(self.parent)
        if self.child == self.parent:
            raise TaxonomyError(f"self-edge on {self.child!r}")


@dataclass(frozen=True)
class Taxonomy:
    edges: tuple[TaxonomyEdge, ...]
    name: str = ""
    parent: dict[str, str] = field(init=False, compare=False, repr=False)
    roots: frozenset[str] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        parent: dict[str, str] = {}
        for e in self.edges:
            if e.child in parent:
                raise DuplicateParentError(e.child)
            parent[e.child] = e.parent
        # cycle check: walk up from every node, visited sets bound the walk
        for start in parent:
            seen = {start}
            node = start
            while node in parent:
                node = parent[node]
                if node in seen:
                    raise CycleError(node)
                seen.add(node)
        nodes = set(parent) | set(parent.values())
        roots = frozenset(n for n in nodes if n not in parent)
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: (e.child, e.parent))))
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "roots", roots)

    @property
    def nodes(self) -> frozenset[str]:
        return frozenset(self.parent) | self.roots

    @property
    def internal_nodes(self) -> frozenset[str]:
        return frozenset(e.parent for e in self.edges)

    @property
    def leaves(self) -> frozenset[str]:
        return self.nodes - self.internal_nodes

    def parent_of(self, item: Item) -> Optional[Item]:
        return self.parent.get(item)


def build_taxonomy(edges: Iterable[TaxonomyEdge | tuple[str, str]], name: str = "") -> Taxonomy:
    norm = tuple(e if isinstance(e, TaxonomyEdge) else TaxonomyEdge(*e) for e in edges)
    return Taxonomy(norm, name)


@dataclass(frozen=True)
class TaxonomySet:
    taxonomies: tuple[Taxonomy, ...]

    def __post_init__(self):
        seen: dict[str, str] = {}
        for t in self.taxonomies:
            for n in t.nodes:
                if n in seen:
                    raise TaxonomyError(
                        f"node {n!r} appears in taxonomies {seen[n]!r} and {t.name!r}; "
                        "node sets must be disjoint"
                    )
                seen[n] = t.name

    def __iter__(self):
        return iter(self.taxonomies)

    def __len__(self):
        return len(self.taxonomies)

    def tree_of(self, item: Item) -> Optional[Taxonomy]:
        for t in self.taxonomies:
            if item in t.nodes:
                return t
        return None

    @property
    def internal_nodes(self) -> frozenset[str]:
        out: set[str] = set()
        for t in self.taxonomies:
            out |= t.internal_nodes
        return frozenset(out)

    def parent_of(self, item: Item) -> Optional[Item]:
        t = self.tree_of(item)
        return t.parent_of(item) if t else None

    def leaf_descendants(self, item: Item) -> Itemset:
        """Leaves reachable downward from item; {item} when it is not an
        internal node of any tree."""
        t = self.tree_of(item)
        if t is None or item not in t.internal_nodes:
            return (item,)
        children: dict[str, list[str]] = {}
        for e in t.edges:
            children.setdefault(e.parent, []).append(e.child)
        leaves: set[str] = set()
        stack = [item]
        while stack:
            n = stack.pop()
            kids = children.get(n)
            if kids:
                stack.extend(kids)
            else:
                leaves.add(n)
        return tuple(sorted(leaves))

    def is_ancestor(self, anc: Item, desc: Item) -> bool:
        """True iff anc is reachable from desc by one or more parent steps."""
        t = self.tree_of(desc)
        if t is None:
            return False
        node = t.parent_of(desc)
        while node is not None:
            if node == anc:
                return True
            node = t.parent_of(node)
        return False


EMPTY_TAXONOMY_SET = TaxonomySet(())
