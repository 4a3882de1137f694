# src/core/ranker/wphi.py
"""
Direct maximization of a smoothed empirical W_φ criterion over linear scorers.

The rank of a positive point is replaced by the smooth surrogate

    R̃ᵢ = ½ + Σ_z σ((s(xᵢ) − s(z)) / h)      (z over the pooled training sample, xᵢ included)

which tends to the midrank as h → 0 on tie-free scores and to N′/2 + ½ as h → ∞.
The trainer ascends Ŵ̃/n′ − λ‖w‖² with Ŵ̃ = Σᵢ φ(R̃ᵢ/(N′+1)).
"""

from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt
from scipy.special import expit

from src.core.errors import InvalidInput, UnsupportedGenerator
from src.core.rankstats.generators import ScoreGenerator
from src.core.ranker.models import Array, LinearModel, zero_linear
from src.core.ranker.pairs import prepare
from src.core.rng import make_rng
from src.schemas.models import TrainConfig

logger = logging.getLogger(__name__)

_INIT_SCALE = 0.01


def smoothed_ranks(w: Array, pos: Array, pooled: Array, bandwidth: float) -> Array:
    s_pos = pos @ w
    s_all = pooled @ w
    return np.asarray(0.5 + expit((s_pos[:, None] - s_all[None, :]) / bandwidth).sum(axis=1), dtype=np.float64)


def smoothed_wphi_objective(w: Array, pos: Array, pooled: Array, phi: ScoreGenerator, bandwidth: float) -> tuple[float, Array]:
    """Ŵ̃(w) and its gradient (no penalty, no 1/n′ scaling)."""
    s_pos = pos @ w
    s_all = pooled @ w
    sig = expit((s_pos[:, None] - s_all[None, :]) / bandwidth)
    size = pooled.shape[0]
    u = (0.5 + sig.sum(axis=1)) / (size + 1.0)
    value = float(np.sum(phi(u)))

    slope = sig * (1.0 - sig) / bandwidth
    c = phi.derivative(u) / (size + 1.0)
    grad = (c * slope.sum(axis=1)) @ pos - (c @ slope) @ pooled
    return value, np.asarray(grad, dtype=np.float64)


def _check(phi: ScoreGenerator, cfg: TrainConfig) -> None:
    if not phi.is_smooth:
        raise UnsupportedGenerator(f"smoothed W_phi ascent needs a differentiable generator, got {phi.descriptor}")
    if cfg.bandwidth <= 0:
        raise InvalidInput(f"bandwidth h must be > 0, got {cfg.bandwidth}")


def wphi_ascent(x_train: npt.ArrayLike, y_train: npt.ArrayLike, phi: ScoreGenerator, cfg: TrainConfig) -> tuple[LinearModel, list[float]]:
    """
    Run the ascent and return the model with the penalized objective before each step and
    after the last one (``cfg.epochs + 1`` values). Degenerate training data give the zero
    model and a flat path.
    """
    _check(phi, cfg)
    data = prepare(x_train, y_train, cfg, trainer="wphi")
    if data.degenerate:
        zero = zero_linear(data.features)
        value, _ = smoothed_wphi_objective(zero.weights, data.pos, data.pooled, phi, cfg.bandwidth)
        return zero, [value / data.pos.shape[0]] * (cfg.epochs + 1)

    pos, pooled = data.pos, data.pooled
    n = pos.shape[0]
    w = make_rng(cfg.seed, "wphi-init").normal(0.0, _INIT_SCALE, size=data.features.dim_out)
    path: list[float] = []
    for _ in range(cfg.epochs):
        value, grad = smoothed_wphi_objective(w, pos, pooled, phi, cfg.bandwidth)
        path.append(value / n - cfg.l2_penalty * float(w @ w))
        w = w + cfg.learning_rate * (grad / n - 2.0 * cfg.l2_penalty * w)
    value, _ = smoothed_wphi_objective(w, pos, pooled, phi, cfg.bandwidth)
    path.append(value / n - cfg.l2_penalty * float(w @ w))
    logger.debug("wphi ranker (%s): objective %.6g -> %.6g", phi.descriptor, path[0], path[-1])
    return LinearModel(features=data.features, weights=w), path


def train_smoothed_wphi(x_train: npt.ArrayLike, y_train: npt.ArrayLike, phi: ScoreGenerator, cfg: TrainConfig) -> LinearModel:
    model, _ = wphi_ascent(x_train, y_train, phi, cfg)
    return model


__all__ = ["smoothed_ranks", "smoothed_wphi_objective", "wphi_ascent", "train_smoothed_wphi"]
