"""
Pass/fail checks over computed results.
"""
from dataclasses import dataclass
from typing import Dict, Iterable, Optional
import logging

from .experiment import ExperimentSummary
from .families import FamilyCheck

logger = logging.getLogger(__name__)

# Loose band applied to every run of at least this many matrices.
SANITY_MIN_MATRICES = 10_000
SANITY_MIN_PEARSON = 0.98
SANITY_RATIO_RANGE = (0.99, 1.01)


@dataclass
class ValidationResult:
    valid: bool
    reason: Optional[str] = None
    metrics: Optional[Dict] = None


def check_sanity_band(summary: ExperimentSummary) -> ValidationResult:
    """Pearson r >= 0.98 and mean ratio within [0.99, 1.01] for runs of 10,000+ matrices."""
    metrics = {"pearson_r": summary.pearson_r, "mean_ratio": summary.mean_ratio,
               "n_matrices": summary.n_matrices}
    if summary.n_matrices < SANITY_MIN_MATRICES:
        return ValidationResult(valid=True, reason="run too small for the sanity band", metrics=metrics)

    low, high = SANITY_RATIO_RANGE
    if summary.pearson_r is None or summary.pearson_r < SANITY_MIN_PEARSON:
        reason = f"pearson_r {summary.pearson_r} below {SANITY_MIN_PEARSON}"
    elif summary.mean_ratio is None or not low <= summary.mean_ratio <= high:
        reason = f"mean_ratio {summary.mean_ratio} outside [{low}, {high}]"
    else:
        return ValidationResult(valid=True, metrics=metrics)
    logger.error(f"Sanity band failed: {reason}")
    return ValidationResult(valid=False, reason=reason, metrics=metrics)


def check_oracle_agreement(checks: Iterable[FamilyCheck], tolerance: float = 1e-10) -> ValidationResult:
    """Every closed form within `tolerance` of its direct value."""
    gaps = {check.measure: check.abs_diff for check in checks}
    failing = sorted(name for name, gap in gaps.items() if gap > tolerance)
    if failing:
        return ValidationResult(
            valid=False,
            reason=f"closed form disagrees with direct value for {', '.join(failing)}",
            metrics=gaps,
        )
    return ValidationResult(valid=True, metrics=gaps)
