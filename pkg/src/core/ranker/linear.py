# src/core/ranker/linear.py
"""Linear ranker trained on pair differences with the squared hinge loss (an L2 RankSVM)."""

from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt

from src.core.ranker.models import Array, LinearModel, zero_linear
from src.core.ranker.pairs import prepare, sample_pairs
from src.schemas.models import TrainConfig

logger = logging.getLogger(__name__)


def squared_hinge_loss(
    w: Array,
    pos: Array,
    neg: Array,
    i: npt.NDArray[np.intp],
    j: npt.NDArray[np.intp],
    l2_penalty: float,
) -> tuple[float, Array]:
    """
    (1/|P|) Σ_{(i,j)∈P} max(0, 1 − ⟨w, pos_i − neg_j⟩)² + λ‖w‖² and its gradient in w.
    """
    diff = pos[i] - neg[j]
    slack = np.maximum(0.0, 1.0 - diff @ w)
    loss = float(np.mean(slack**2) + l2_penalty * (w @ w))
    grad = -2.0 * (slack @ diff) / slack.size + 2.0 * l2_penalty * w
    return loss, np.asarray(grad, dtype=np.float64)


def train_linear_pairwise(x_train: npt.ArrayLike, y_train: npt.ArrayLike, cfg: TrainConfig) -> LinearModel:
    """
    Full-gradient descent from w = 0 on the squared pairwise hinge loss.

    Each epoch uses the pairs returned by ``sample_pairs`` for that epoch index, so the
    result depends only on (data, cfg). The bias is fixed at 0 (it does not affect ranks).
    """
    data = prepare(x_train, y_train, cfg, trainer="linear")
    if data.degenerate:
        return zero_linear(data.features)

    n, m = data.pos.shape[0], data.neg.shape[0]
    w = np.zeros(data.features.dim_out)
    loss = float("nan")
    for epoch in range(cfg.epochs):
        i, j = sample_pairs(n, m, cfg.pair_budget, cfg.seed, epoch)
        loss, grad = squared_hinge_loss(w, data.pos, data.neg, i, j, cfg.l2_penalty)
        w = w - cfg.learning_rate * grad
    logger.debug("linear ranker: %d epochs, final loss %.6g", cfg.epochs, loss)
    return LinearModel(features=data.features, weights=w)


__all__ = ["squared_hinge_loss", "train_linear_pairwise"]
