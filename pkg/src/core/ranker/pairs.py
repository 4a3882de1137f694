# src/core/ranker/pairs.py
"""Shared plumbing of the pairwise trainers: input checks, feature maps and pair sampling."""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from src.core.errors import DegenerateDataWarning, InvalidInput
from src.core.ranker.models import Array, FeatureMap, as_matrix, fit_feature_map
from src.core.rng import make_rng
from src.schemas.models import TrainConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TrainingData:
    """Positive and negative training rows after the feature map."""

    features: FeatureMap
    pos: Array
    neg: Array
    degenerate: bool

    @property
    def pooled(self) -> Array:
        return np.vstack([self.pos, self.neg])


def prepare(x_train: npt.ArrayLike, y_train: npt.ArrayLike, cfg: TrainConfig, *, trainer: str) -> TrainingData:
    """
    Validate the two training samples, fit the feature map on their union and transform them.

    ``degenerate`` is set (and a ``DegenerateDataWarning`` emitted) when every pooled
    point is identical, in which case no ordering can be learned.
    """
    x = as_matrix(x_train, "positive training sample")
    y = as_matrix(y_train, "negative training sample")
    if x.shape[1] != y.shape[1]:
        raise InvalidInput(f"training samples differ in dimension: {x.shape[1]} vs {y.shape[1]}")
    pooled = np.vstack([x, y])
    fmap = fit_feature_map(pooled, standardize=cfg.standardize, augment_quadratic=cfg.augment_quadratic)
    degenerate = bool(np.all(np.ptp(pooled, axis=0) == 0))
    if degenerate:
        msg = f"{trainer}: all {pooled.shape[0]} training points are identical; returning a constant scorer"
        logger.warning(msg)
        warnings.warn(msg, DegenerateDataWarning, stacklevel=3)
    return TrainingData(features=fmap, pos=fmap.transform(x), neg=fmap.transform(y), degenerate=degenerate)


def sample_pairs(n: int, m: int, budget: int, seed: int, epoch: int) -> tuple[npt.NDArray[np.intp], npt.NDArray[np.intp]]:
    """
    (positive index, negative index) pairs for one epoch.

    All n·m pairs when they fit in ``budget``; otherwise ``budget`` pairs drawn uniformly
    with replacement from the stream keyed by (seed, epoch).
    """
    if n * m <= budget:
        i, j = np.divmod(np.arange(n * m, dtype=np.intp), m)
        return i, j
    rng = make_rng(seed, "pairs", epoch)
    return rng.integers(0, n, size=budget).astype(np.intp), rng.integers(0, m, size=budget).astype(np.intp)


__all__ = ["TrainingData", "prepare", "sample_pairs"]
