"""taxrules: mine association rules, fold them up item taxonomies with full
provenance, and query the generalized result."""

from .core import (
    AssociationRule,
    MiningParams,
    RuleSet,
    Side,
    Transaction,
    TransactionDatabase,
    canonicalize_rule,
    itemset,
)
from .generalize import (
    ContingencyTable,
    GartOptions,
    GeneralizedRule,
    GeneralizedRuleSet,
    contingency,
    expand,
    generalize,
)
from .measures import MeasureVector, ThresholdFlags, flag_thresholds, measures_from_table
from .miner import FrequentItemset, derive_rules, frequent_itemsets, mine
from .taxonomy import Taxonomy, TaxonomyEdge, TaxonomySet, build_taxonomy

__all__ = [
    "AssociationRule",
    "ContingencyTable",
    "FrequentItemset",
    "GartOptions",
    "GeneralizedRule",
    "GeneralizedRuleSet",
    "MeasureVector",
    "MiningParams",
    "RuleSet",
    "Side",
    "Taxonomy",
    "TaxonomyEdge",
    "TaxonomySet",
    "ThresholdFlags",
    "Transaction",
    "TransactionDatabase",
    "build_taxonomy",
    "canonicalize_rule",
    "contingency",
    "derive_rules",
    "expand",
    "flag_thresholds",
    "frequent_itemsets",
    "generalize",
    "itemset",
    "measures_from_table",
    "mine",
    "measures_from_table",
]

__version__ = "0.1.0"
