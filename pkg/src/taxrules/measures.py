"""Objective evaluation measures computed from contingency tables.

Undefined measures are None, never a sentinel number. Note on UI labels:
the analysis screens abbreviate support as "Sup" and confidence as "Cov";
"Cov" there does NOT mean the coverage measure below.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import MiningParams
from .generalize import ContingencyTable

MEASURE_NAMES = ("support", "confidence", "coverage", "lift", "leverage", "conviction")

# analyst-facing label aliases; "Cov" is confidence, not coverage
UI_LABELS = {"support": "Sup", "confidence": "Cov"}


class EmptyTableError(ValueError):
    pass


class UnknownMeasureError(ValueError):
    def __init__(self, name: str):
        super().__init__(f"unknown measure {name!r}; valid names: {', '.join(MEASURE_NAMES)}")
        self.name = name


@dataclass(frozen=True)
class MeasureVector:
    support: Optional[float] = None
    confidence: Optional[float] = None
    coverage: Optional[float] = None
    lift: Optional[float] = None
    leverage: Optional[float] = None
    conviction: Optional[float] = None

    def get(self, name: str) -> Optional[float]:
        if name not in MEASURE_NAMES:
            raise UnknownMeasureError(name)
        return getattr(self, name)

    def as_dict(self) -> dict[str, Optional[float]]:
        return {name: getattr(self, name) for name in MEASURE_NAMES}


@dataclass(frozen=True)
class ThresholdFlags:
    below_min_support: bool = False
    below_min_confidence: bool = False

    @property
    def any(self) -> bool:
        return self.below_min_support or self.below_min_confidence


def measures_from_table(ct: ContingencyTable) -> MeasureVector:
    if ct.n == 0:
        raise EmptyTableError("contingency table has no transactions")
    n = ct.n
    lhs_count = ct.n_lr + ct.n_lnr
    rhs_freq = (ct.n_lr + ct.n_nlr) / n
    support = ct.n_lr / n
    coverage = lhs_count / n
    confidence = ct.n_lr / lhs_count if lhs_count > 0 else None
    lift = None
    if confidence is not None and rhs_freq > 0:
        lift = confidence / rhs_freq
    leverage = support - coverage * rhs_freq
    conviction = None
    if confidence is not None and confidence != 1.0:
        conviction = (1.0 - rhs_freq) / (1.0 - confidence)
    return MeasureVector(
        support=support,
        confidence=confidence,
        coverage=coverage,
        lift=lift,
        leverage=leverage,
        conviction=conviction,
    )


def flag_thresholds(v: MeasureVector, params: MiningParams) -> ThresholdFlags:
    """Which mining thresholds the recomputed measures fell below. An absent
    confidence is never flagged."""
    return ThresholdFlags(
        below_min_support=v.support is not None and v.support < params.min_support,
        below_min_confidence=v.confidence is not None and v.confidence < params.min_confidence,
    )
