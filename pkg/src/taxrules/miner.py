"""Apriori-style frequent itemset mining and rule derivation.

Level-wise candidate generation with downward-closure pruning; support
counting runs through the shared counting kernels over a boolean
transaction/item matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import ceil

import numpy as np

from . import _kernels
from .core import (
    AssociationRule,
    EmptyDatabaseError,
    Itemset,
    MiningParams,
    RuleSet,
    TransactionDatabase,
)


@dataclass(frozen=True)
class FrequentItemset:
    items: Itemset
    count: int


class ClosureViolationError(ValueError):
    """A frequent itemset was given without one of its non-empty subsets."""


def item_matrix(db: TransactionDatabase) -> tuple[np.ndarray, dict[str, int]]:
    """Boolean (n_transactions, n_items) presence matrix plus item->column map."""
    col = {item: i for i, item in enumerate(db.item_universe)}
    matrix = np.zeros((len(db), len(col)), dtype=np.bool_)
    for t in db.transactions:
        for item in t.items:
            matrix[t.id, col[item]] = True
    return matrix, col


def frequent_itemsets(
    db: TransactionDatabase, min_support: float, max_items: int
) -> list[FrequentItemset]:
    """All itemsets of size <= max_items with absolute count >= ceil(min_support * N)."""
    n = len(db)
    if n == 0:
        raise EmptyDatabaseError("cannot mine an empty database")
    threshold = ceil(min_support * n)
    matrix, col = item_matrix(db)
    items = list(db.item_universe)

    def count(cands: list[tuple[str, ...]], k: int) -> np.ndarray:
        idx = np.array([[col[i] for i in c] for c in cands], dtype=np.int64).reshape(len(cands), k)
        return _kernels.count_all_present(matrix, idx)

    out: list[FrequentItemset] = []
    level = [(i,) for i in items]
    counts = count(level, 1) if level else np.zeros(0, dtype=np.int64)
    frequent = {c: int(cnt) for c, cnt in zip(level, counts) if cnt >= threshold}
    k = 1
    while frequent and k <= max_items:
        out.extend(FrequentItemset(c, cnt) for c, cnt in sorted(frequent.items()))
        if k == max_items:
            break
        prev = set(frequent)
        # join step: merge pairs sharing a (k-1)-prefix, then prune by closure
        sorted_prev = sorted(prev)
        candidates = []
        for a, b in combinations(sorted_prev, 2):
            if a[:-1] == b[:-1]:
                cand = tuple(sorted(set(a) | set(b)))
                if all(tuple(s) in prev for s in combinations(cand, k)):
                    candidates.append(cand)
        candidates = sorted(set(candidates))
        if not candidates:
            break
        counts = count(candidates, k + 1)
        frequent = {c: int(cnt) for c, cnt in zip(candidates, counts) if cnt >= threshold}
        k += 1
    return out


def derive_rules(freq: list[FrequentItemset], params: MiningParams, n: int) -> RuleSet:
    """Enumerate every lhs => rhs split of each frequent itemset passing the
    confidence threshold. Requires the list to be downward-closed."""
    counts = {f.items: f.count for f in freq}
    rules: list[AssociationRule] = []
    for items, cnt in counts.items():
        if len(items) < 2 or len(items) > params.max_items:
            continue
        for r in range(1, len(items)):
            for lhs in combinations(items, r):
                if lhs not in counts:
                    raise ClosureViolationError(
                        f"itemset {items} listed without its subset {lhs}"
                    )
                confidence = cnt / counts[lhs]
                if confidence >= params.min_confidence:
                    rhs = tuple(i for i in items if i not in lhs)
                    rules.append(
                        AssociationRule(lhs, rhs, support=cnt / n, confidence=confidence)
                    )
    return RuleSet(tuple(rules), mining_params=params)


def mine(db: TransactionDatabase, params: MiningParams) -> RuleSet:
    freq = frequent_itemsets(db, params.min_support, params.max_items)
    return derive_rules(freq, params, len(db))
