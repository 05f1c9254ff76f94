"""Selection and drill-down over generalized rule sets.

Item constraints are descendant-aware: querying a leaf finds the generalized
rules that swallowed it. Each matching rule is wrapped in a RuleView carrying
its measures, threshold flags and which drill-down links apply.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Optional

from .core import AssociationRule, Itemset, MiningParams
from .generalize import GeneralizedRule, GeneralizedRuleSet, expand
from .measures import (
    MEASURE_NAMES,
    MeasureVector,
    ThresholdFlags,
    UnknownMeasureError,
    flag_thresholds,
    measures_from_table,
)
from .taxonomy import TaxonomySet

COMPARATORS = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    "≤": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
    "≥": lambda a, b: a >= b,
    "=": lambda a, b: a == b,
}


class QueryError(ValueError):
    pass


class NotAvailableError(LookupError):
    """A drill-down was requested on a rule that does not offer it."""


@dataclass(frozen=True)
class MeasurePredicate:
    measure: str
    comparator: str
    value: float

    def __post_init__(self):
        if self.measure not in MEASURE_NAMES:
            raise UnknownMeasureError(self.measure)
        if self.comparator not in COMPARATORS:
            raise QueryError(
                f"unknown comparator {self.comparator!r}; valid: {sorted(COMPARATORS)}"
            )

    def holds(self, v: MeasureVector) -> bool:
        value = v.get(self.measure)
        return value is not None and COMPARATORS[self.comparator](value, self.value)

    @classmethod
    def parse(cls, expr: str) -> "MeasurePredicate":
        """Parse e.g. 'support>=0.5'."""
        for op in ("<=", ">=", "≤", "≥", "<", ">", "="):
            if op in expr:
                name, _, raw = expr.partition(op)
                try:
                    return cls(name.strip(), op, float(raw))
                except ValueError as e:
                    if isinstance(e, (UnknownMeasureError, QueryError)):
                        raise
                    raise QueryError(f"bad predicate value in {expr!r}") from e
        raise QueryError(f"no comparator found in predicate {expr!r}")


@dataclass(frozen=True)
class RuleQuery:
    lhs_contains: frozenset[str] = frozenset()
    rhs_contains: frozenset[str] = frozenset()
    any_side_contains: frozenset[str] = frozenset()
    measure_predicates: tuple[MeasurePredicate, ...] = ()
    selected_measures: tuple[str, ...] = ()
    sort_by: Optional[str] = None
    descending: bool = False
    limit: Optional[int] = None
    offset: int = 0
    exact_match: bool = False  # disable descendant-aware item matching

    def __post_init__(self):
        for name in self.selected_measures:
            if name not in MEASURE_NAMES:
                raise UnknownMeasureError(name)
        if self.sort_by is not None and self.sort_by not in MEASURE_NAMES:
            raise UnknownMeasureError(self.sort_by)
        if self.offset < 0 or (self.limit is not None and self.limit < 0):
            raise QueryError("limit/offset must be non-negative")


@dataclass(frozen=True)
class RuleView:
    rule: GeneralizedRule
    measures: MeasureVector
    flags: ThresholdFlags
    selected_measures: tuple[str, ...] = ()
    links: dict[str, bool] = field(default_factory=dict)

    @property
    def key(self) -> str:
        return rule_token(self.rule)


def rule_token(rule: GeneralizedRule) -> str:
    """URL-safe deterministic identifier for a generalized rule."""
    blob = "|".join((",".join(rule.lhs), ",".join(rule.rhs)))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


def item_matches_side(
    item: str, side_items: Itemset, taxes: TaxonomySet, exact: bool = False
) -> bool:
    if item in side_items:
        return True
    if exact:
        return False
    return any(taxes.is_ancestor(g, item) for g in side_items)


def _passes(g: GeneralizedRule, q: RuleQuery, taxes: TaxonomySet, v: MeasureVector) -> bool:
    for item in q.lhs_contains:
        if not item_matches_side(item, g.lhs, taxes, q.exact_match):
            return False
    for item in q.rhs_contains:
        if not item_matches_side(item, g.rhs, taxes, q.exact_match):
            return False
    for item in q.any_side_contains:
        if not (
            item_matches_side(item, g.lhs, taxes, q.exact_match)
            or item_matches_side(item, g.rhs, taxes, q.exact_match)
        ):
            return False
    return all(p.holds(v) for p in q.measure_predicates)


def _view(g: GeneralizedRule, q: RuleQuery, params: Optional[MiningParams]) -> RuleView:
    v = measures_from_table(g.table) if g.table is not None else MeasureVector()
    flags = flag_thresholds(v, params) if params is not None else ThresholdFlags()
    has_gen = bool(g.generalized_items)
    return RuleView(
        rule=g,
        measures=v,
        flags=flags,
        selected_measures=q.selected_measures,
        links={
            "expanded": has_gen,
            "sources": has_gen,
            "measures_drilldown": flags.any,
        },
    )


def run_query(gs: GeneralizedRuleSet, q: RuleQuery) -> list[RuleView]:
    taxes = gs.taxonomy_set
    params = gs.source_ruleset.mining_params
    views = [_view(g, q, params) for g in gs]
    views = [w for w in views if _passes(w.rule, q, taxes, w.measures)]
    views.sort(key=lambda w: w.rule.key)
    if q.sort_by is not None:
        # stable: ties keep canonical order; rules missing the measure sort last
        def sort_key(w: RuleView):
            value = w.measures.get(q.sort_by)
            missing = value is None
            if not missing and q.descending:
                value = -value
            return (missing, 0.0 if missing else value)

        views.sort(key=sort_key)
    views = views[q.offset :]
    if q.limit is not None:
        views = views[: q.limit]
    return views


def drilldown_expanded(view: RuleView, taxes: TaxonomySet) -> tuple[AssociationRule, ...]:
    if not view.links["expanded"]:
        raise NotAvailableError("expanded view is only available for generalized rules")
    return expand(view.rule, taxes)


def drilldown_sources(view: RuleView) -> tuple[AssociationRule, ...]:
    if not view.links["sources"]:
        raise NotAvailableError("source view is only available for generalized rules")
    return view.rule.sources


def drilldown_measures(view: RuleView) -> tuple[MeasureVector, ThresholdFlags]:
    """The M link: the full measure vector plus which thresholds it violated."""
    if not view.links["measures_drilldown"]:
        raise NotAvailableError("no mining threshold was violated by this rule")
    return view.measures, view.flags


def export_view(views: list[RuleView]) -> str:
    """Tab-separated plain-text table, measures at 4 decimal places."""
    selected = views[0].selected_measures if views else ()
    lines = ["\t".join(("rule", *selected))]
    for w in views:
        cells = [w.rule.render()]
        for name in selected:
            value = w.measures.get(name)
            cells.append("-" if value is None else f"{value:.4f}")
        lines.append("\t".join(cells))
    return "".join(line + "\n" for line in lines)
