"""Command-line interface: mine, generalize, query, report, synth, serve.

Exit codes: 0 success, 1 validation or parse error, 2 internal error.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from . import formats
from .core import MiningParams, Side
from .generalize import GartOptions, generalize
from .measures import UnknownMeasureError
from .miner import mine
from .query import MeasurePredicate, QueryError, RuleQuery, export_view, run_query
from .synth import SynthParams, synthesize

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INTERNAL = 2


def _read(path: str) -> str:
    return Path(path).read_text("utf-8")


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, "utf-8")


def _load_rules(path: str, fmt: str):
    text = _read(path)
    if fmt == "borgelt":
        return formats.import_borgelt_rules(text)
    return formats.parse_ruleset(text)


def cmd_mine(args) -> int:
    db = formats.parse_transactions(_read(args.db))
    params = MiningParams(args.min_support, args.min_confidence, args.max_items)
    ruleset = mine(db, params)
    _write(args.out, formats.write_ruleset(ruleset))
    print(f"mined {len(ruleset)} rules from {len(db)} transactions -> {args.out}")
    return EXIT_OK


def _run_generalize(rules, taxes, side, opts, db):
    result = generalize(rules, taxes, side, opts, db)
    for w in result.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return result


def cmd_generalize(args) -> int:
    rules = _load_rules(args.rules, args.rules_format)
    taxes = formats.parse_taxonomies(_read(args.taxonomies))
    db = formats.parse_transactions(_read(args.db)) if args.db else None
    opts = GartOptions(max_level=args.max_level, merge_only=args.merge_only)
    result = _run_generalize(rules, taxes, Side.parse(args.side), opts, db)
    _write(args.out, formats.write_generalized(result))
    n_in, n_out = len(rules), len(result)
    rate = 100.0 * (n_in - n_out) / n_in if n_in else 0.0
    print(f"{n_in} -> {n_out}, {rate:.2f}% reduction -> {args.out}")
    return EXIT_OK


def cmd_query(args) -> int:
    gs = formats.parse_generalized(_read(args.result))
    q = RuleQuery(
        lhs_contains=frozenset(args.lhs_item),
        rhs_contains=frozenset(args.rhs_item),
        any_side_contains=frozenset(args.item),
        measure_predicates=tuple(MeasurePredicate.parse(w) for w in args.where),
        selected_measures=tuple(args.measure),
        sort_by=args.sort,
        descending=args.order == "desc",
        limit=args.limit,
        offset=args.offset,
        exact_match=args.exact,
    )
    sys.stdout.write(export_view(run_query(gs, q)))
    return EXIT_OK


def reduction_report(
    rule_files: list[str],
    taxonomy_files: list[str],
    side: Side,
    opts: GartOptions,
    rules_format: str = "json",
) -> tuple[list[dict], list[str]]:
    """Cross product of rule sets x taxonomy sets; per-cell errors are
    collected, not fatal."""
    rows, errors = [], []
    for rf in rule_files:
        for tf in taxonomy_files:
            label = (Path(rf).stem, Path(tf).stem)
            try:
                rules = _load_rules(rf, rules_format)
                taxes = formats.parse_taxonomies(_read(tf))
                result = generalize(rules, taxes, side, opts)
                n_in, n_out = len(rules), len(result)
                rate = 100.0 * (n_in - n_out) / n_in if n_in else 0.0
                rows.append(
                    {
                        "ruleset": label[0],
                        "taxonomyset": label[1],
                        "input_count": n_in,
                        "output_count": n_out,
                        "reduction_rate": f"{rate:.4f}",
                    }
                )
            except Exception as e:
                errors.append(f"{label[0]} x {label[1]}: {e}")
    rows.sort(key=lambda r: (r["ruleset"], r["taxonomyset"]))
    return rows, errors


def report_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(
        buf,
        fieldnames=["ruleset", "taxonomyset", "input_count", "output_count", "reduction_rate"],
        lineterminator="\n",
    )
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def cmd_report(args) -> int:
    opts = GartOptions(max_level=args.max_level, merge_only=args.merge_only)
    rows, errors = reduction_report(
        args.rules, args.taxonomies, Side.parse(args.side), opts, args.rules_format
    )
    for e in errors:
        print(f"error: {e}", file=sys.stderr)
    text = report_csv(rows)
    if args.out:
        _write(args.out, text)
    sys.stdout.write(text)
    return EXIT_OK if not errors else EXIT_INVALID


def cmd_synth(args) -> int:
    params = SynthParams(
        n_transactions=args.transactions,
        n_leaf_items=args.items,
        taxonomy_depth=args.depth,
        branching=args.branching,
        seed=args.seed,
    )
    db, taxes = synthesize(params)
    _write(args.out_db, formats.write_transactions(db))
    _write(args.out_tax, formats.write_taxonomies(taxes))
    print(f"wrote {len(db)} transactions -> {args.out_db}, taxonomy -> {args.out_tax}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    host, _, port = args.listen.rpartition(":")
    app = create_app(args.store_root)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="taxrules")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine", help="mine association rules from a transaction file")
    p.add_argument("db")
    p.add_argument("--min-support", type=float, default=0.5)
    p.add_argument("--min-confidence", type=float, default=0.5)
    p.add_argument("--max-items", type=int, default=5)
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("generalize", help="generalize a rule set over taxonomies")
    p.add_argument("rules")
    p.add_argument("taxonomies")
    p.add_argument("--side", default="lhs", choices=["lhs", "rhs"])
    p.add_argument("--db", default=None)
    p.add_argument("--max-level", type=int, default=None)
    p.add_argument("--merge-only", action="store_true")
    p.add_argument("--rules-format", default="json", choices=["json", "borgelt"])
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_generalize)

    p = sub.add_parser("query", help="filter and print a generalized rule set")
    p.add_argument("result")
    p.add_argument("--item", action="append", default=[])
    p.add_argument("--lhs-item", action="append", default=[])
    p.add_argument("--rhs-item", action="append", default=[])
    p.add_argument("--measure", action="append", default=[])
    p.add_argument("--where", action="append", default=[])
    p.add_argument("--sort", default=None)
    p.add_argument("--order", default="asc", choices=["asc", "desc"])
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--offset", type=int, default=0)
    p.add_argument("--exact", action="store_true")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("report", help="reduction-rate matrix over rule sets x taxonomy sets")
    p.add_argument("--rules", nargs="+", required=True)
    p.add_argument("--taxonomies", nargs="+", required=True)
    p.add_argument("--side", default="lhs", choices=["lhs", "rhs"])
    p.add_argument("--max-level", type=int, default=None)
    p.add_argument("--merge-only", action="store_true")
    p.add_argument("--rules-format", default="json", choices=["json", "borgelt"])
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("synth", help="generate a seeded synthetic database and taxonomy")
    p.add_argument("--transactions", type=int, required=True)
    p.add_argument("--items", type=int, required=True)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--branching", type=int, default=3)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out-db", required=True)
    p.add_argument("--out-tax", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--listen", default="127.0.0.1:8000")
    p.add_argument("--store-root", default="./taxrules-store")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError, UnknownMeasureError, QueryError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as e:  # noqa: BLE001 - top-level guard for exit code 2
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
