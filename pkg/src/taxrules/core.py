"""Shared domain types: items, itemsets, transactions, rules and rule sets.

Everything here is immutable after construction and safe to share between
threads. Items are opaque, case-sensitive text tokens; an itemset is kept in
lexicographic order so that equality and serialization are deterministic.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional

Item = str
Itemset = tuple[str, ...]  # always sorted, duplicate-free


class InvalidRuleError(ValueError):
    """Raised for rules with empty or overlapping sides."""


class InvalidItemError(ValueError):
    """Raised for empty item names or names containing whitespace/controls."""


def check_item(name: str) -> str:
    if not name:
        raise InvalidItemError("item name must be non-empty")
    if any(c.isspace() or ord(c) < 0x20 or c == "\x7f" for c in name):
        raise InvalidItemError(f"item name {name!r} contains whitespace or control characters")
    return name


def itemset(items: Iterable[str]) -> Itemset:
    """Canonicalize a collection of item names into a sorted, deduped tuple."""
    return tuple(sorted({check_item(i) for i in items}))


class Side(enum.Enum):
    LHS = "lhs"
    RHS = "rhs"

    @classmethod
    def parse(cls, token: str) -> "Side":
        try:
            return cls(token.strip().lower())
        except ValueError:
            raise ValueError(f"side must be 'lhs' or 'rhs', got {token!r}") from None


RuleKey = tuple[Itemset, Itemset]


def canonicalize_rule(lhs: Iterable[str], rhs: Iterable[str]) -> RuleKey:
    """Deterministic key for a rule: two rules are equal iff their sides are
    equal as sets. Rejects empty or overlapping sides."""
    l, r = itemset(lhs), itemset(rhs)
    if not l or not r:
        raise InvalidRuleError("both rule sides must be non-empty")
    if set(l) & set(r):
        raise InvalidRuleError(f"rule sides overlap on {sorted(set(l) & set(r))}")
    return (l, r)


@dataclass(frozen=True)
class AssociationRule:
    """An implication lhs => rhs with optional mined measures (fractions of N)."""

    lhs: Itemset
    rhs: Itemset
    support: Optional[float] = None
    confidence: Optional[float] = None

    def __post_init__(self):
        key = canonicalize_rule(self.lhs, self.rhs)
        object.__setattr__(self, "lhs", key[0])
        object.__setattr__(self, "rhs", key[1])
        for name, v in (("support", self.support), ("confidence", self.confidence)):
            if v is not None and not (0.0 <= v <= 1.0):
                raise InvalidRuleError(f"{name} must lie in [0,1], got {v}")

    @property
    def key(self) -> RuleKey:
        return (self.lhs, self.rhs)

    def side(self, side: Side) -> Itemset:
        return self.lhs if side is Side.LHS else self.rhs

    def render(self) -> str:
        return f"{' & '.join(self.lhs)} ⇒ {' & '.join(self.rhs)}"


@dataclass(frozen=True)
class MiningParams:
    min_support: float
    min_confidence: float
    max_items: int

    def __post_init__(self):
        if not (0.0 < self.min_support <= 1.0):
            raise ValueError(f"min_support must be in (0,1], got {self.min_support}")
        if not (0.0 < self.min_confidence <= 1.0):
            raise ValueError(f"min_confidence must be in (0,1], got {self.min_confidence}")
        if self.max_items < 2:
            raise ValueError(f"max_items must be >= 2, got {self.max_items}")


@dataclass(frozen=True)
class RuleSet:
    """A duplicate-free collection of rules, kept in canonical key order."""

    rules: tuple[AssociationRule, ...]
    mining_params: Optional[MiningParams] = None

    def __post_init__(self):
        by_key: dict[RuleKey, AssociationRule] = {}
        for r in self.rules:
            if r.key in by_key:
                raise InvalidRuleError(f"duplicate rule {r.render()}")
            by_key[r.key] = r
        object.__setattr__(self, "rules", tuple(by_key[k] for k in sorted(by_key)))

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)


@dataclass(frozen=True)
class Transaction:
    id: int
    items: Itemset


@dataclass(frozen=True)
class TransactionDatabase:
    transactions: tuple[Transaction, ...]
    item_universe: Itemset = field(init=False)

    def __post_init__(self):
        ids = [t.id for t in self.transactions]
        if len(set(ids)) != len(ids):
            raise ValueError("transaction ids must be unique")
        universe: set[str] = set()
        for t in self.transactions:
            universe.update(t.items)
        object.__setattr__(self, "item_universe", tuple(sorted(universe)))

    @classmethod
    def from_baskets(cls, baskets: Iterable[Iterable[str]]) -> "TransactionDatabase":
        return cls(tuple(Transaction(i, itemset(b)) for i, b in enumerate(baskets)))

    def __len__(self) -> int:
        return len(self.transactions)


class EmptyDatabaseError(ValueError):
    """Raised by operations that need at least one transaction."""
