"""Deterministic synthetic benchmark data.

Generates a taxonomy forest whose leaves are exactly the item universe, and
transactions with correlated co-occurrence inside sibling groups so that
generalization actually merges rules. Identical seeds give identical output.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .core import TransactionDatabase
from .taxonomy import Taxonomy, TaxonomyEdge, TaxonomySet


@dataclass(frozen=True)
class SynthParams:
    n_transactions: int
    n_leaf_items: int
    taxonomy_depth: int
    branching: int
    seed: int

    def __post_init__(self):
        for name in ("n_transactions", "n_leaf_items", "taxonomy_depth", "branching"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1, got {getattr(self, name)}")


def synth_taxonomy(params: SynthParams) -> TaxonomySet:
    leaves = [f"it{i:03d}" for i in range(params.n_leaf_items)]
    edges: list[TaxonomyEdge] = []
    level_nodes = leaves
    for level in range(1, params.taxonomy_depth + 1):
        if len(level_nodes) <= 1:
            break
        parents = []
        for i in range(0, len(level_nodes), params.branching):
            parent = f"g{level}_{i // params.branching:03d}"
            parents.append(parent)
            for child in level_nodes[i : i + params.branching]:
                edges.append(TaxonomyEdge(child, parent))
        level_nodes = parents
    return TaxonomySet((Taxonomy(tuple(edges), name=f"synth-{params.seed}"),))


def synth_database(params: SynthParams, taxes: TaxonomySet) -> TransactionDatabase:
    rng = random.Random(params.seed)
    leaves = sorted(taxes.taxonomies[0].leaves) if taxes.taxonomies[0].edges else [
        f"it{i:03d}" for i in range(params.n_leaf_items)
    ]
    tax = taxes.taxonomies[0]
    sibling_groups: dict[str, list[str]] = {}
    for leaf in leaves:
        parent = tax.parent_of(leaf)
        if parent is not None:
            sibling_groups.setdefault(parent, []).append(leaf)
    group_list = [sorted(g) for _, g in sorted(sibling_groups.items())] or [leaves]

    baskets = []
    for i in range(params.n_transactions):
        basket = {leaves[i % len(leaves)]}  # guarantees every leaf occurs
        group = rng.choice(group_list)
        k = rng.randint(1, min(3, len(group)))
        basket.update(rng.sample(group, k))
        basket.add(rng.choice(leaves))
        baskets.append(sorted(basket))
    return TransactionDatabase.from_baskets(baskets)


def synthesize(params: SynthParams) -> tuple[TransactionDatabase, TaxonomySet]:
    taxes = synth_taxonomy(params)
    return synth_database(params, taxes), taxes
