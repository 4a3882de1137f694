# src/core/ranker/mlp.py
"""One-hidden-layer tanh ranker trained on the pairwise logistic loss log(1 + exp(−(s(x) − s(y))))."""

from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt
from scipy.special import expit

from src.core.ranker.models import Array, FeatureMap, MlpModel
from src.core.ranker.pairs import prepare, sample_pairs
from src.core.rng import make_rng
from src.schemas.models import TrainConfig

logger = logging.getLogger(__name__)

_ADAM_B1 = 0.9
_ADAM_B2 = 0.999
_ADAM_EPS = 1e-8


def pack(model: MlpModel) -> Array:
    """Flat parameter vector [w1 (row-major), b1, w2, b2]."""
    return np.concatenate([model.w1.ravel(), model.b1, model.w2, [model.b2]])


def unpack(theta: Array, features: FeatureMap, hidden: int) -> MlpModel:
    d = features.dim_out
    k = hidden * d
    return MlpModel(
        features=features,
        w1=theta[:k].reshape(hidden, d),
        b1=theta[k : k + hidden],
        w2=theta[k + hidden : k + 2 * hidden],
        b2=float(theta[k + 2 * hidden]),
    )


def initial_network(features: FeatureMap, hidden: int, seed: int) -> MlpModel:
    """Seeded initialization: w1 ~ N(0, 1/d), w2 ~ N(0, 1/h), zero biases."""
    rng = make_rng(seed, "mlp-init")
    d = features.dim_out
    return MlpModel(
        features=features,
        w1=rng.normal(0.0, 1.0 / np.sqrt(d), size=(hidden, d)),
        b1=np.zeros(hidden),
        w2=rng.normal(0.0, 1.0 / np.sqrt(hidden), size=hidden),
        b2=0.0,
    )


def pairwise_logistic_loss(
    theta: Array,
    pos: Array,
    neg: Array,
    i: npt.NDArray[np.intp],
    j: npt.NDArray[np.intp],
    hidden: int,
    l2_penalty: float = 0.0,
) -> tuple[float, Array]:
    """Mean pairwise logistic loss (plus λ(‖w1‖² + ‖w2‖²)) and its gradient in the flat parameters."""
    d = pos.shape[1]
    k = hidden * d
    w1 = theta[:k].reshape(hidden, d)
    b1 = theta[k : k + hidden]
    w2 = theta[k + hidden : k + 2 * hidden]
    b2 = theta[k + 2 * hidden]

    hp = np.tanh(pos @ w1.T + b1)
    hn = np.tanh(neg @ w1.T + b1)
    delta = (hp @ w2 + b2)[i] - (hn @ w2 + b2)[j]
    loss = float(np.mean(np.logaddexp(0.0, -delta)) + l2_penalty * (np.sum(w1**2) + np.sum(w2**2)))

    g = -expit(-delta) / delta.size
    cp = np.bincount(i, weights=g, minlength=pos.shape[0])
    cn = -np.bincount(j, weights=g, minlength=neg.shape[0])

    grad_w2 = hp.T @ cp + hn.T @ cn + 2.0 * l2_penalty * w2
    grad_b2 = cp.sum() + cn.sum()
    dap = np.outer(cp, w2) * (1.0 - hp**2)
    dan = np.outer(cn, w2) * (1.0 - hn**2)
    grad_w1 = dap.T @ pos + dan.T @ neg + 2.0 * l2_penalty * w1
    grad_b1 = dap.sum(axis=0) + dan.sum(axis=0)
    grad = np.concatenate([grad_w1.ravel(), grad_b1, grad_w2, [grad_b2]])
    return loss, grad


def train_mlp_pairwise(x_train: npt.ArrayLike, y_train: npt.ArrayLike, cfg: TrainConfig) -> MlpModel:
    """
    Adam on the pairwise logistic loss from a seeded initial network.

    ``cfg.epochs == 0`` returns the initial network unchanged.
    """
    data = prepare(x_train, y_train, cfg, trainer="mlp")
    hidden = cfg.hidden_width
    if data.degenerate:
        theta0 = np.zeros(hidden * data.features.dim_out + 2 * hidden + 1)
        return unpack(theta0, data.features, hidden)

    init = initial_network(data.features, hidden, cfg.seed)
    theta = pack(init)
    first = np.zeros_like(theta)
    second = np.zeros_like(theta)
    n, m = data.pos.shape[0], data.neg.shape[0]
    loss = float("nan")
    for epoch in range(cfg.epochs):
        i, j = sample_pairs(n, m, cfg.pair_budget, cfg.seed, epoch)
        loss, grad = pairwise_logistic_loss(theta, data.pos, data.neg, i, j, hidden, cfg.l2_penalty)
        first = _ADAM_B1 * first + (1.0 - _ADAM_B1) * grad
        second = _ADAM_B2 * second + (1.0 - _ADAM_B2) * grad**2
        step = epoch + 1
        m_hat = first / (1.0 - _ADAM_B1**step)
        v_hat = second / (1.0 - _ADAM_B2**step)
        theta = theta - cfg.learning_rate * m_hat / (np.sqrt(v_hat) + _ADAM_EPS)
    if cfg.epochs:
        logger.debug("mlp ranker: %d epochs, final loss %.6g", cfg.epochs, loss)
        return unpack(theta, data.features, hidden)
    return init


__all__ = ["pack", "unpack", "initial_network", "pairwise_logistic_loss", "train_mlp_pairwise"]
