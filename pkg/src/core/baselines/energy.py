# src/core/baselines/energy.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
import numpy.typing as npt
from scipy.spatial.distance import cdist

from src.core.baselines.permutation import BoolArray, PooledStatistic, permutation_test
from src.core.ranker.models import Array
from src.schemas.models import PermutationScheme, TestReport


def _within_mean(total: float, size: int) -> float:
    return total / (size * (size - 1)) if size > 1 else 0.0


@dataclass(frozen=True)
class EnergyStatistic(PooledStatistic):
    """2·mean‖x−y‖ − mean_{i≠j}‖x_i−x_j‖ − mean_{i≠j}‖y_i−y_j‖ over a pooled distance matrix."""

    name: str = "energy"

    def prepare(self, pooled: Array) -> Any:
        dist = cdist(pooled, pooled)
        return dist, dist.sum(axis=1)

    def evaluate(self, prepared: Any, labels: BoolArray) -> float:
        dist, row_sums = prepared
        a = labels.astype(np.float64)
        n = int(labels.sum())
        m = labels.size - n
        da = dist @ a
        sxx = float(a @ da)
        sxy = float((1.0 - a) @ da)
        syy = float((1.0 - a) @ (row_sums - da))
        return 2.0 * sxy / (n * m) - _within_mean(sxx, n) - _within_mean(syy, m)


def energy_statistic(x: npt.ArrayLike, y: npt.ArrayLike) -> float:
    """Energy distance statistic; a sample of one point contributes no within term."""
    return EnergyStatistic()(x, y)


def energy_test(x: npt.ArrayLike, y: npt.ArrayLike, alpha: float, scheme: PermutationScheme | None = None) -> TestReport:
    return permutation_test(EnergyStatistic(), x, y, alpha, scheme or PermutationScheme(), "upper")


__all__ = ["EnergyStatistic", "energy_statistic", "energy_test"]
