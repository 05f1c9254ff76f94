"""One-sided generalization of a rule set over a taxonomy set.

Rules are grouped by their fixed side, each group is walked up one taxonomy
at a time (one simultaneous parent step per pass, duplicates merged with
their provenance unioned), and every surviving rule carries the full set of
original rules it replaces. The output never has more rules than the input.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import product
from typing import Optional

from . import _kernels
from .core import (
    AssociationRule,
    EmptyDatabaseError,
    Itemset,
    RuleKey,
    RuleSet,
    Side,
    TransactionDatabase,
    itemset,
)
from .miner import item_matrix
from .taxonomy import Taxonomy, TaxonomySet


@dataclass(frozen=True)
class GartOptions:
    max_level: Optional[int] = None  # parent steps allowed per item; None = to the roots
    merge_only: bool = False  # keep a pass only if it actually merged rules

    def __post_init__(self):
        if self.max_level is not None and self.max_level < 1:
            raise ValueError(f"max_level must be >= 1, got {self.max_level}")


@dataclass(frozen=True)
class ContingencyTable:
    """Joint counts of a rule's sides over the database: (lhs, rhs) both
    matched, lhs only, rhs only, neither."""

    n_lr: int
    n_lnr: int
    n_nlr: int
    n_nlnr: int
    n: int

    def __post_init__(self):
        cells = (self.n_lr, self.n_lnr, self.n_nlr, self.n_nlnr)
        if any(c < 0 for c in cells):
            raise ValueError("contingency cells must be non-negative")
        if sum(cells) != self.n:
            raise ValueError(f"contingency cells sum to {sum(cells)}, expected n={self.n}")


@dataclass(frozen=True)
class GeneralizedRule:
    lhs: Itemset
    rhs: Itemset
    side: Side
    sources: tuple[AssociationRule, ...]
    generalized_items: Itemset = ()
    table: Optional[ContingencyTable] = None

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(sorted(self.sources, key=lambda r: r.key)))
        if not self.sources:
            raise ValueError("a generalized rule needs at least one source rule")
        fixed = self.fixed_side_items
        for s in self.sources:
            if s.side(_other(self.side)) != fixed:
                raise ValueError("source rule's fixed side differs from the generalized rule's")

    @property
    def key(self) -> RuleKey:
        return (self.lhs, self.rhs)

    @property
    def generalized_side_items(self) -> Itemset:
        return self.lhs if self.side is Side.LHS else self.rhs

    @property
    def fixed_side_items(self) -> Itemset:
        return self.rhs if self.side is Side.LHS else self.lhs

    @property
    def is_pass_through(self) -> bool:
        return not self.generalized_items

    def render(self) -> str:
        """Rule text with generalized items between parentheses."""
        gen = set(self.generalized_items)
        fmt = lambda s: " & ".join(f"({i})" if i in gen else i for i in s)
        return f"{fmt(self.lhs)} ⇒ {fmt(self.rhs)}"


def _other(side: Side) -> Side:
    return Side.RHS if side is Side.LHS else Side.LHS


@dataclass(frozen=True)
class GeneralizedRuleSet:
    rules: tuple[GeneralizedRule, ...]
    side: Side
    source_ruleset: RuleSet
    taxonomy_set: TaxonomySet
    options: GartOptions
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(sorted(self.rules, key=lambda r: r.key)))

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)


def partition_by_fixed_side(rules: RuleSet, side: Side) -> dict[Itemset, list[AssociationRule]]:
    """Group rules by the side that stays fixed (RHS when generalizing LHS
    and vice versa)."""
    fixed = _other(side)
    groups: dict[Itemset, list[AssociationRule]] = {}
    for r in rules:
        groups.setdefault(r.side(fixed), []).append(r)
    return groups


def _with_generalized_side(rule: GeneralizedRule, items: Itemset) -> GeneralizedRule:
    if rule.side is Side.LHS:
        return replace(rule, lhs=items)
    return replace(rule, rhs=items)


def ascend_one_level(
    group: list[GeneralizedRule], tax: Taxonomy, side: Side
) -> tuple[list[GeneralizedRule], bool]:
    """One simultaneous parent step for every replaceable item on the
    generalized side; duplicates merged with sources unioned. Returns the new
    group and whether anything was replaced."""
    changed = False
    merged: dict[RuleKey, GeneralizedRule] = {}
    for rule in group:
        new_items = []
        for item in rule.generalized_side_items:
            parent = tax.parent_of(item)
            if parent is not None:
                changed = True
                new_items.append(parent)
            else:
                new_items.append(item)
        stepped = _with_generalized_side(rule, itemset(new_items))
        prev = merged.get(stepped.key)
        if prev is None:
            merged[stepped.key] = stepped
        else:
            merged[stepped.key] = replace(prev, sources=prev.sources + stepped.sources)
    return [merged[k] for k in sorted(merged)], changed


def _ascend_group(
    group: list[GeneralizedRule], taxes: TaxonomySet, side: Side, opts: GartOptions
) -> list[GeneralizedRule]:
    for tax in taxes:
        level = 0
        while opts.max_level is None or level < opts.max_level:
            new_group, changed = ascend_one_level(group, tax, side)
            if not changed:
                break
            if opts.merge_only and len(new_group) >= len(group):
                break  # revert: the pass replaced items but merged nothing
            group = new_group
            level += 1
    return group


def generalize(
    rules: RuleSet,
    taxes: TaxonomySet,
    side: Side,
    opts: GartOptions = GartOptions(),
    db: Optional[TransactionDatabase] = None,
) -> GeneralizedRuleSet:
    internal = taxes.internal_nodes
    out: list[GeneralizedRule] = []
    for fixed_items, group_rules in partition_by_fixed_side(rules, side).items():
        group = [
            GeneralizedRule(lhs=r.lhs, rhs=r.rhs, side=side, sources=(r,))
            for r in group_rules
        ]
        group = _ascend_group(group, taxes, side, opts)
        for g in group:
            gen_items = tuple(i for i in g.generalized_side_items if i in internal)
            out.append(replace(g, generalized_items=gen_items))

    warnings: list[str] = []
    for g in out:
        for gi in g.generalized_items:
            for f in g.fixed_side_items:
                if f == gi or taxes.is_ancestor(f, gi) or taxes.is_ancestor(gi, f):
                    warnings.append(
                        f"rule {g.render()}: fixed-side item {f!r} is related to "
                        f"generalized item {gi!r} in the taxonomy"
                    )
    if len(taxes) > 0 and len(rules) > 0 and all(
        g.is_pass_through and len(g.sources) == 1 for g in out
    ):
        warnings.append("no taxonomy item occurs in any rule; generalization was a no-op")

    if db is not None:
        out = [replace(g, table=contingency(db, g, taxes)) for g in out]

    return GeneralizedRuleSet(
        rules=tuple(out),
        side=side,
        source_ruleset=rules,
        taxonomy_set=taxes,
        options=opts,
        warnings=tuple(warnings),
    )


def _match_mask(matrix, col, items: Itemset, taxes: TaxonomySet):
    groups = []
    for x in items:
        members = {x, *taxes.leaf_descendants(x)}
        groups.append([col[m] for m in members if m in col])
    return _kernels.match_groups(matrix, groups)


def contingency(
    db: TransactionDatabase, rule: GeneralizedRule, taxes: TaxonomySet
) -> ContingencyTable:
    """Count transactions by whether they match each side, where matching an
    item means containing it or any of its leaf descendants."""
    if len(db) == 0:
        raise EmptyDatabaseError("cannot compute a contingency table on an empty database")
    matrix, col = item_matrix(db)
    lhs = _match_mask(matrix, col, rule.lhs, taxes)
    rhs = _match_mask(matrix, col, rule.rhs, taxes)
    n_lr = int((lhs & rhs).sum())
    n_lnr = int((lhs & ~rhs).sum())
    n_nlr = int((~lhs & rhs).sum())
    return ContingencyTable(n_lr, n_lnr, n_nlr, len(db) - n_lr - n_lnr - n_nlr, len(db))


def expand(rule: GeneralizedRule, taxes: TaxonomySet) -> tuple[AssociationRule, ...]:
    """Rewrite the generalized side with every combination of leaf
    descendants of its generalized items. Combinations whose sides overlap
    are dropped; duplicates removed; fixed side unchanged."""
    gen = set(rule.generalized_items)
    choices = [
        taxes.leaf_descendants(i) if i in gen else (i,)
        for i in rule.generalized_side_items
    ]
    fixed = rule.fixed_side_items
    seen: dict[RuleKey, AssociationRule] = {}
    for combo in product(*choices):
        side_items = itemset(combo)
        if set(side_items) & set(fixed):
            continue
        lhs, rhs = (side_items, fixed) if rule.side is Side.LHS else (fixed, side_items)
        r = AssociationRule(lhs, rhs)
        seen.setdefault(r.key, r)
    return tuple(seen[k] for k in sorted(seen))
