# src/core/ranker/boosted.py
"""
Gradient boosting of decision stumps on the pairwise logistic loss.

Each stage computes, for every training row, the average negative gradient of the
pairwise logistic loss over the sampled pairs it belongs to (positive rows push up,
negative rows push down), then fits the least-squares stump to those residuals. The
stage weight is ``cfg.learning_rate``.
"""

from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt
from scipy.special import expit

from src.core.ranker.models import Array, Stump, StumpEnsemble
from src.core.ranker.pairs import prepare, sample_pairs
from src.schemas.models import TrainConfig

logger = logging.getLogger(__name__)


def pair_residuals(f_pos: Array, f_neg: Array, i: npt.NDArray[np.intp], j: npt.NDArray[np.intp]) -> Array:
    """Per-row mean of the negative pairwise-logistic gradient; rows outside every pair get 0."""
    n, m = f_pos.size, f_neg.size
    g = expit(-(f_pos[i] - f_neg[j]))
    push_up = np.bincount(i, weights=g, minlength=n)
    push_down = np.bincount(j, weights=g, minlength=m)
    cnt_pos = np.bincount(i, minlength=n)
    cnt_neg = np.bincount(j, minlength=m)
    r_pos = np.divide(push_up, cnt_pos, out=np.zeros(n), where=cnt_pos > 0)
    r_neg = -np.divide(push_down, cnt_neg, out=np.zeros(m), where=cnt_neg > 0)
    return np.concatenate([r_pos, r_neg])


def best_stump(z_sorted: Array, order: npt.NDArray[np.intp], residuals: Array, weight: float) -> Stump | None:
    """
    Least-squares stump on presorted features.

    ``order[:, f]`` sorts column f of the training matrix and ``z_sorted`` holds the sorted
    columns. Splits are only placed between distinct values; the threshold is their midpoint.
    Returns None when no column has two distinct values.
    """
    rows = z_sorted.shape[0]
    r = residuals[order]
    left_sum = np.cumsum(r, axis=0)[:-1]
    total = r.sum(axis=0)
    left_cnt = np.arange(1, rows, dtype=np.float64)[:, None]
    right_cnt = rows - left_cnt
    right_sum = total - left_sum
    gain = left_sum**2 / left_cnt + right_sum**2 / right_cnt
    valid = z_sorted[1:] > z_sorted[:-1]
    if not np.any(valid):
        return None
    gain = np.where(valid, gain, -np.inf)
    k, f = np.unravel_index(int(np.argmax(gain)), gain.shape)
    threshold = 0.5 * (z_sorted[k, f] + z_sorted[k + 1, f])
    return Stump(
        feature=int(f),
        threshold=float(threshold),
        left=float(left_sum[k, f] / left_cnt[k, 0]),
        right=float(right_sum[k, f] / right_cnt[k, 0]),
        weight=weight,
    )


def train_boosted_pairwise(x_train: npt.ArrayLike, y_train: npt.ArrayLike, cfg: TrainConfig) -> StumpEnsemble:
    """``cfg.epochs`` boosting stages, each adding the best stump on the current pair residuals."""
    data = prepare(x_train, y_train, cfg, trainer="boosted")
    if data.degenerate:
        return StumpEnsemble(features=data.features)

    z = data.pooled
    n, m = data.pos.shape[0], data.neg.shape[0]
    order = np.argsort(z, axis=0, kind="stable")
    z_sorted = np.take_along_axis(z, order, axis=0)

    stumps: list[Stump] = []
    f = np.zeros(n + m)
    for stage in range(cfg.epochs):
        i, j = sample_pairs(n, m, cfg.pair_budget, cfg.seed, stage)
        residuals = pair_residuals(f[:n], f[n:], i, j)
        stump = best_stump(z_sorted, order, residuals, cfg.learning_rate)
        if stump is None:
            break
        stumps.append(stump)
        f += stump(z)
    logger.debug("boosted ranker: %d stumps", len(stumps))
    return StumpEnsemble(features=data.features, stumps=tuple(stumps))


__all__ = ["pair_residuals", "best_stump", "train_boosted_pairwise"]
