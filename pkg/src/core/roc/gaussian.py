# src/core/roc/gaussian.py
"""
Closed-form ROC for two Gaussian populations sharing a covariance Γ.

With δ = θ₊ − θ₋ the optimal scorer is s(z) = ⟨z, Γ⁻¹δ⟩ and

    ROC*(α) = 1 − Φ(Φ⁻¹(1 − α) − √(δᵀΓ⁻¹δ)),   AUC* = Φ(√(δᵀΓ⁻¹δ) / √2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt
from scipy.linalg import cho_factor, cho_solve
from scipy.special import ndtr, ndtri

from src.core.errors import InvalidInput, ModelError
from src.core.roc.curves import RocCurve


@dataclass(frozen=True)
class GaussianOracle:
    """Mean shift ``delta`` and shared covariance ``gamma``; Γ is Cholesky-checked on construction."""

    delta: npt.NDArray[np.float64] = field(repr=False)
    gamma: npt.NDArray[np.float64] = field(repr=False)
    _factor: tuple[npt.NDArray[np.float64], bool] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        delta = np.asarray(self.delta, dtype=np.float64).reshape(-1)
        gamma = np.atleast_2d(np.asarray(self.gamma, dtype=np.float64))
        if gamma.shape != (delta.size, delta.size):
            raise InvalidInput(f"gamma must be {delta.size}x{delta.size}, got {gamma.shape}")
        if not np.allclose(gamma, gamma.T):
            raise ModelError("gamma must be symmetric")
        try:
            factor = cho_factor(gamma, lower=True)
        except np.linalg.LinAlgError as e:
            raise ModelError(f"gamma is not positive definite: {e}") from e
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "_factor", factor)

    @property
    def dim(self) -> int:
        return int(self.delta.size)

    @property
    def direction(self) -> npt.NDArray[np.float64]:
        """Γ⁻¹δ, the weight vector of the optimal linear scorer."""
        return np.asarray(cho_solve(self._factor, self.delta), dtype=np.float64)

    @property
    def separation(self) -> float:
        """δᵀΓ⁻¹δ (squared Mahalanobis distance between the means)."""
        return float(max(0.0, self.delta @ self.direction))

    def roc(self, alpha: npt.ArrayLike) -> npt.NDArray[np.float64]:
        return gaussian_roc_star(self, alpha)

    def as_curve(self, grid_size: int = 2001) -> RocCurve:
        """Piecewise-linear approximation of ROC* on a uniform α grid."""
        grid = np.linspace(0.0, 1.0, grid_size)
        inner = gaussian_roc_star(self, grid[1:-1])
        return RocCurve(fpr=grid, tpr=np.concatenate([[0.0], inner, [1.0]]))


def gaussian_roc_star(oracle: GaussianOracle, alpha: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """ROC*(α) = 1 − Φ(Φ⁻¹(1 − α) − √(δᵀΓ⁻¹δ)) for α in (0, 1)."""
    a = np.asarray(alpha, dtype=np.float64)
    if np.any((a <= 0.0) | (a >= 1.0)):
        raise InvalidInput("alpha must lie in (0, 1)")
    shift = math.sqrt(oracle.separation)
    return np.asarray(1.0 - ndtr(ndtri(1.0 - a) - shift), dtype=np.float64)


def binormal_auc(oracle: GaussianOracle) -> float:
    """AUC* = Φ(√(δᵀΓ⁻¹δ)/√2)."""
    return float(ndtr(math.sqrt(oracle.separation) / math.sqrt(2.0)))


__all__ = ["GaussianOracle", "gaussian_roc_star", "binormal_auc"]
