"""Hot counting kernels with a numba fast path and a pure-numpy fallback.

Both paths share one contract and are exercised against each other by the
test suite and by benchmarks/bench_kernels.py. Backend selection:

  TAXRULES_BACKEND=numpy  force the numpy fallback
  TAXRULES_BACKEND=numba  require numba (ImportError if missing)
  unset                   numba when importable, numpy otherwise
"""
from __future__ import annotations

import os

import numpy as np

_requested = os.environ.get("TAXRULES_BACKEND", "").strip().lower()
if _requested not in ("", "numpy", "numba"):
    raise ValueError(f"TAXRULES_BACKEND must be 'numpy' or 'numba', got {_requested!r}")

if _requested == "numpy":
    _HAVE_NUMBA = False
else:
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:
        if _requested == "numba":
            raise
        _HAVE_NUMBA = False

BACKEND = "numba" if _HAVE_NUMBA else "numpy"


def _count_all_present_np(matrix: np.ndarray, candidates: np.ndarray) -> np.ndarray:
    if candidates.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    # (n_tx, n_cand, k) -> all over k -> sum over transactions
    present = matrix[:, candidates]  # bool (n_tx, n_cand, k)
    return present.all(axis=2).sum(axis=0).astype(np.int64)


def _match_groups_np(matrix: np.ndarray, cols: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    out = np.ones(matrix.shape[0], dtype=np.bool_)
    for g in range(offsets.shape[0] - 1):
        lo, hi = offsets[g], offsets[g + 1]
        if hi == lo:
            out[:] = False
            break
        out &= matrix[:, cols[lo:hi]].any(axis=1)
    return out


if _HAVE_NUMBA:

    @njit(cache=True)
    def _count_all_present_nb(matrix, candidates):  # pragma: no cover - parity-tested
        n_tx, _ = matrix.shape
        n_cand, k = candidates.shape
        counts = np.zeros(n_cand, dtype=np.int64)
        for c in range(n_cand):
            total = 0
            for t in range(n_tx):
                ok = True
                for j in range(k):
                    if not matrix[t, candidates[c, j]]:
                        ok = False
                        break
                if ok:
                    total += 1
            counts[c] = total
        return counts

    @njit(cache=True)
    def _match_groups_nb(matrix, cols, offsets):  # pragma: no cover - parity-tested
        n_tx = matrix.shape[0]
        n_groups = offsets.shape[0] - 1
        out = np.empty(n_tx, dtype=np.bool_)
        for t in range(n_tx):
            matched = True
            for g in range(n_groups):
                any_hit = False
                for i in range(offsets[g], offsets[g + 1]):
                    if matrix[t, cols[i]]:
                        any_hit = True
                        break
                if not any_hit:
                    matched = False
                    break
            out[t] = matched
        return out


def count_all_present(matrix: np.ndarray, candidates: np.ndarray) -> np.ndarray:
    """For each candidate row of column indices, count transactions (rows of
    the boolean item matrix) containing every listed column."""
    matrix = np.ascontiguousarray(matrix, dtype=np.bool_)
    candidates = np.ascontiguousarray(candidates, dtype=np.int64)
    if _HAVE_NUMBA:
        return _count_all_present_nb(matrix, candidates)
    return _count_all_present_np(matrix, candidates)


def match_groups(matrix: np.ndarray, groups: list[list[int]]) -> np.ndarray:
    """Per-transaction match mask: a transaction matches iff every group has
    at least one of its columns present. An empty group can never match; an
    empty group list matches everything."""
    matrix = np.ascontiguousarray(matrix, dtype=np.bool_)
    cols = np.array([c for g in groups for c in g], dtype=np.int64)
    offsets = np.zeros(len(groups) + 1, dtype=np.int64)
    for i, g in enumerate(groups):
        offsets[i + 1] = offsets[i] + len(g)
    if _HAVE_NUMBA:
        return _match_groups_nb(matrix, cols, offsets)
    return _match_groups_np(matrix, cols, offsets)
