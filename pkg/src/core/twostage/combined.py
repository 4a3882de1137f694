# src/core/twostage/combined.py
from __future__ import annotations

import math
from collections.abc import Sequence

from src.core.errors import InvalidInput
from src.schemas.models import TestReport

_LEVEL_TOL = 1e-9


def bonferroni_levels(alpha: float, k: int) -> list[float]:
    """α split evenly over k sub-tests."""
    if k < 1:
        raise InvalidInput(f"need at least one sub-test, got {k}")
    if not (0.0 < alpha < 1.0):
        raise InvalidInput(f"alpha must be in (0, 1), got {alpha}")
    return [alpha / k] * k


def combined_test(reports: Sequence[TestReport], alpha: float) -> bool:
    """
    Union-bound combination: reject iff some sub-test rejects at its own level α_k.

    The sub-test levels must be positive and add up to ``alpha``, so the combined level is ≤ α.
    """
    if not reports:
        raise InvalidInput("combined_test needs at least one sub-test")
    levels = [r.alpha for r in reports]
    if any(a <= 0 for a in levels):
        raise InvalidInput("every sub-test level must be > 0")
    if not math.isclose(math.fsum(levels), alpha, rel_tol=0.0, abs_tol=_LEVEL_TOL):
        raise InvalidInput(f"sub-test levels sum to {math.fsum(levels)!r}, expected {alpha!r}")
    return any(r.reject for r in reports)


def combined_p_value(reports: Sequence[TestReport]) -> float:
    """Bonferroni p-value min(1, K · min_k p_k)."""
    if not reports:
        raise InvalidInput("combined_p_value needs at least one sub-test")
    return min(1.0, len(reports) * min(r.p_value for r in reports))


__all__ = ["bonferroni_levels", "combined_test", "combined_p_value"]
