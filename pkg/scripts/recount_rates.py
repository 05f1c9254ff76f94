#!/usr/bin/env python3
"""Recompute reduction rates by counting lines in the documents themselves.

Deliberately avoids the library: an input rule contributes exactly one
`"support":` line to a ruleset document, and a generalized rule exactly one
`"generalized_items":` line. Usage:

    recount_rates.py ruleset.json generalized.json
"""
import sys


def count_lines(path: str, prefix: str) -> int:
    with open(path, encoding="utf-8") as fh:
        return sum(1 for line in fh if line.strip().startswith(prefix))


def main() -> int:
    ruleset_path, generalized_path = sys.argv[1], sys.argv[2]
    n_in = count_lines(ruleset_path, '"support":')
    n_out = count_lines(generalized_path, '"generalized_items":')
    rate = 100.0 * (n_in - n_out) / n_in if n_in else 0.0
    print(f"{n_in} {n_out} {rate:.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
