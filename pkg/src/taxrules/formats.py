"""Parsers and serializers for the four artifact kinds.

Text formats: transaction databases (one basket per line, whitespace
separated) and taxonomy sets (tab-separated child/parent edges under
`= name` headers). Structured formats: rule sets and generalized rule sets
as canonical JSON documents with an explicit format version. Every
writer/parser pair round-trips byte-identically.
"""
from __future__ import annotations

import json
import warnings as _warnings
from typing import Any, Optional

from .core import (
    AssociationRule,
    InvalidItemError,
    InvalidRuleError,
    MiningParams,
    RuleSet,
    Side,
    Transaction,
    TransactionDatabase,
    itemset,
)
from .generalize import ContingencyTable, GartOptions, GeneralizedRule, GeneralizedRuleSet
from .measures import measures_from_table
from .taxonomy import Taxonomy, TaxonomyError, TaxonomyEdge, TaxonomySet

FORMAT_VERSION = "1"
KINDS = ("transactions", "taxonomy", "ruleset", "generalized-ruleset")


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        loc = f"line {line}: " if line is not None else ""
        super().__init__(f"{loc}{message}")
        self.line = line


class FormatWarning(UserWarning):
    pass


def _warn(msg: str) -> None:
    _warnings.warn(msg, FormatWarning, stacklevel=3)


# ---------------------------------------------------------------- transactions

def parse_transactions(text: str) -> TransactionDatabase:
    transactions = []
    tid = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(set(tokens)) != len(tokens):
            _warn(f"line {lineno}: duplicate items collapsed")
        try:
            transactions.append(Transaction(tid, itemset(tokens)))
        except InvalidItemError as e:
            raise ParseError(str(e), lineno) from e
        tid += 1
    return TransactionDatabase(tuple(transactions))


def write_transactions(db: TransactionDatabase) -> str:
    lines = []
    for t in db.transactions:
        if not t.items:
            raise ValueError(f"transaction {t.id} is empty; not representable in the line format")
        lines.append(" ".join(t.items))
    return "".join(line + "\n" for line in lines)


# ------------------------------------------------------------------ taxonomies

def parse_taxonomies(text: str) -> TaxonomySet:
    taxonomies: list[Taxonomy] = []
    name = ""
    edges: list[TaxonomyEdge] = []
    started = False

    def flush():
        nonlocal edges
        if started:
            taxonomies.append(Taxonomy(tuple(edges), name))
        edges = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.startswith("="):
            flush()
            name = stripped[1:].strip()
            started = True
            continue
        parts = line.split("\t")
        parts = [p.strip() for p in parts if p.strip()]
        if len(parts) != 2:
            raise ParseError(
                f"expected 'child<TAB>parent', got {stripped!r}", lineno
            )
        started = True
        try:
            edges.append(TaxonomyEdge(parts[0], parts[1]))
        except (TaxonomyError, InvalidItemError) as e:
            raise ParseError(str(e), lineno) from e
    flush()
    return TaxonomySet(tuple(taxonomies))


def write_taxonomies(taxes: TaxonomySet) -> str:
    out = []
    for t in taxes:
        out.append(f"= {t.name}".rstrip() + "\n")
        for e in t.edges:
            out.append(f"{e.child}\t{e.parent}\n")
    return "".join(out)


# --------------------------------------------------------------- borgelt rules

def import_borgelt_rules(text: str) -> RuleSet:
    """Parse `rhs-items <- lhs-items (support%, confidence%)` lines."""
    rules: dict[tuple, AssociationRule] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "<-" not in line:
            raise ParseError(f"expected 'rhs <- lhs (...)', got {line!r}", lineno)
        rhs_part, lhs_part = line.split("<-", 1)
        lhs_part = lhs_part.strip()
        support = confidence = None
        if lhs_part.endswith(")"):
            open_idx = lhs_part.rfind("(")
            if open_idx < 0:
                raise ParseError("unmatched ')' in measures", lineno)
            inside = lhs_part[open_idx + 1 : -1]
            lhs_part = lhs_part[:open_idx].strip()
            nums = [p.strip().rstrip("%") for p in inside.split(",")]
            if len(nums) != 2:
                raise ParseError(f"expected '(support, confidence)', got ({inside})", lineno)
            try:
                support = float(nums[0]) / 100.0
                confidence = float(nums[1]) / 100.0
            except ValueError as e:
                raise ParseError(f"bad measure value in ({inside})", lineno) from e
        else:
            _warn(f"line {lineno}: rule has no measures")
        try:
            rule = AssociationRule(
                itemset(lhs_part.split()),
                itemset(rhs_part.split()),
                support=support,
                confidence=confidence,
            )
        except (InvalidRuleError, InvalidItemError) as e:
            raise ParseError(str(e), lineno) from e
        if rule.key in rules:
            _warn(f"line {lineno}: duplicate rule collapsed")
        else:
            rules[rule.key] = rule
    return RuleSet(tuple(rules.values()))


def export_borgelt_rules(rs: RuleSet) -> str:
    out = []
    for r in rs:
        line = f"{' '.join(r.rhs)} <- {' '.join(r.lhs)}"
        if r.support is not None and r.confidence is not None:
            line += f" ({r.support * 100.0!r}, {r.confidence * 100.0!r})"
        out.append(line + "\n")
    return "".join(out)


# ------------------------------------------------------------------- json docs

def _dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _loads(text: str, kind: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", e.lineno) from e
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    if doc.get("kind") != kind:
        raise ParseError(f"expected kind {kind!r}, got {doc.get('kind')!r}")
    if doc.get("format_version") != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {doc.get('format_version')!r}")
    return doc


def _header(kind: str, created_at: Optional[str]) -> dict:
    doc: dict[str, Any] = {"format_version": FORMAT_VERSION, "kind": kind}
    if created_at is not None:
        doc["created_at"] = created_at
    return doc


def _params_json(p: Optional[MiningParams]):
    if p is None:
        return None
    return {
        "min_support": p.min_support,
        "min_confidence": p.min_confidence,
        "max_items": p.max_items,
    }


def _params_from(obj) -> Optional[MiningParams]:
    if obj is None:
        return None
    return MiningParams(obj["min_support"], obj["min_confidence"], obj["max_items"])


def _rule_json(r: AssociationRule) -> dict:
    return {
        "lhs": list(r.lhs),
        "rhs": list(r.rhs),
        "support": r.support,
        "confidence": r.confidence,
    }


def _rule_from(obj) -> AssociationRule:
    return AssociationRule(
        itemset(obj["lhs"]), itemset(obj["rhs"]), obj.get("support"), obj.get("confidence")
    )


def write_ruleset(rs: RuleSet, created_at: Optional[str] = None) -> str:
    doc = _header("ruleset", created_at)
    doc["mining_params"] = _params_json(rs.mining_params)
    doc["rules"] = [_rule_json(r) for r in rs]
    return _dumps(doc)


def parse_ruleset(text: str) -> RuleSet:
    doc = _loads(text, "ruleset")
    try:
        return RuleSet(
            tuple(_rule_from(o) for o in doc["rules"]),
            mining_params=_params_from(doc.get("mining_params")),
        )
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(f"malformed ruleset document: {e}") from e


def write_generalized(gs: GeneralizedRuleSet, created_at: Optional[str] = None) -> str:
    doc = _header("generalized-ruleset", created_at)
    doc["side"] = gs.side.value
    doc["options"] = {
        "max_level": gs.options.max_level,
        "merge_only": gs.options.merge_only,
    }
    doc["mining_params"] = _params_json(gs.source_ruleset.mining_params)
    doc["taxonomies"] = [
        {"name": t.name, "edges": [[e.child, e.parent] for e in t.edges]}
        for t in gs.taxonomy_set
    ]
    doc["warnings"] = list(gs.warnings)
    rules = []
    for g in gs:
        entry: dict[str, Any] = {
            "lhs": list(g.lhs),
            "rhs": list(g.rhs),
            "generalized_items": list(g.generalized_items),
            "sources": [_rule_json(s) for s in g.sources],
        }
        if g.table is not None:
            entry["table"] = {
                "n_lr": g.table.n_lr,
                "n_lnr": g.table.n_lnr,
                "n_nlr": g.table.n_nlr,
                "n_nlnr": g.table.n_nlnr,
                "n": g.table.n,
            }
            entry["measures"] = measures_from_table(g.table).as_dict()
        else:
            entry["table"] = None
            entry["measures"] = None
        rules.append(entry)
    doc["rules"] = rules
    return _dumps(doc)


def parse_generalized(text: str) -> GeneralizedRuleSet:
    doc = _loads(text, "generalized-ruleset")
    try:
        side = Side.parse(doc["side"])
        opts = GartOptions(
            max_level=doc["options"].get("max_level"),
            merge_only=bool(doc["options"].get("merge_only", False)),
        )
        taxes = TaxonomySet(
            tuple(
                Taxonomy(tuple(TaxonomyEdge(c, p) for c, p in t["edges"]), t.get("name", ""))
                for t in doc.get("taxonomies", [])
            )
        )
        sources: dict[tuple, AssociationRule] = {}
        rules = []
        for entry in doc["rules"]:
            srcs = tuple(_rule_from(o) for o in entry["sources"])
            for s in srcs:
                sources[s.key] = s
            table = None
            if entry.get("table") is not None:
                t = entry["table"]
                table = ContingencyTable(t["n_lr"], t["n_lnr"], t["n_nlr"], t["n_nlnr"], t["n"])
            rules.append(
                GeneralizedRule(
                    lhs=itemset(entry["lhs"]),
                    rhs=itemset(entry["rhs"]),
                    side=side,
                    sources=srcs,
                    generalized_items=itemset(entry["generalized_items"]),
                    table=table,
                )
            )
        return GeneralizedRuleSet(
            rules=tuple(rules),
            side=side,
            source_ruleset=RuleSet(
                tuple(sources.values()), mining_params=_params_from(doc.get("mining_params"))
            ),
            taxonomy_set=taxes,
            options=opts,
            warnings=tuple(doc.get("warnings", [])),
        )
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(f"malformed generalized-ruleset document: {e}") from e


PARSERS = {
    "transactions": parse_transactions,
    "taxonomy": parse_taxonomies,
    "ruleset": parse_ruleset,
    "generalized-ruleset": parse_generalized,
}
