# src/core/ranker/models.py
"""
Scoring functions s: ℝ^d → ℝ produced by the ranking trainers.

Every model owns a ``FeatureMap`` fitted on its training data only (optional quadratic
augmentation followed by optional standardization), so holdout data are scored with
training statistics and nothing else.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import ClassVar, Literal

import numpy as np
import numpy.typing as npt

from src.core.errors import InvalidInput

ModelKind = Literal["linear", "mlp", "boosted", "fixed"]

Array = npt.NDArray[np.float64]


def _frozen(arr: npt.ArrayLike) -> Array:
    out = np.array(arr, dtype=np.float64)
    out.setflags(write=False)
    return out


def as_matrix(values: npt.ArrayLike, name: str = "sample") -> Array:
    """Coerce a sample to a finite (rows, d) float matrix; 1-d input is one column."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise InvalidInput(f"{name} must be a non-empty (rows, d) matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput(f"{name} contains non-finite values")
    return arr


def quadratic_features(z: Array) -> Array:
    """[z, z_i·z_j for i ≤ j] in ``np.triu_indices`` order."""
    iu, ju = np.triu_indices(z.shape[1])
    return np.hstack([z, z[:, iu] * z[:, ju]])


@dataclass(frozen=True, eq=False)
class FeatureMap:
    """Input transform stored inside each model."""

    dim_in: int
    quadratic: bool = False
    mean: Array | None = field(default=None, repr=False)
    scale: Array | None = field(default=None, repr=False)

    @property
    def dim_out(self) -> int:
        d = self.dim_in
        return d + d * (d + 1) // 2 if self.quadratic else d

    @property
    def standardized(self) -> bool:
        return self.mean is not None

    def transform(self, x: npt.ArrayLike) -> Array:
        z = as_matrix(x)
        if z.shape[1] != self.dim_in:
            raise InvalidInput(f"expected {self.dim_in} features, got {z.shape[1]}")
        if self.quadratic:
            z = quadratic_features(z)
        if self.mean is not None and self.scale is not None:
            z = (z - self.mean) / self.scale
        return z


def fit_feature_map(pooled: Array, *, standardize: bool, augment_quadratic: bool) -> FeatureMap:
    """Feature map fitted on the pooled training sample; constant columns keep scale 1."""
    d = pooled.shape[1]
    if not standardize:
        return FeatureMap(dim_in=d, quadratic=augment_quadratic)
    z = quadratic_features(pooled) if augment_quadratic else pooled
    mean = z.mean(axis=0)
    std = z.std(axis=0)
    scale = np.where(std > 0, std, 1.0)
    return FeatureMap(dim_in=d, quadratic=augment_quadratic, mean=_frozen(mean), scale=_frozen(scale))


class ScoringModel(ABC):
    """A deterministic, total scoring function on ℝ^d."""

    kind: ClassVar[ModelKind]
    features: FeatureMap

    @property
    def dim(self) -> int:
        return self.features.dim_in

    @abstractmethod
    def _score_features(self, z: Array) -> Array: ...

    def scores(self, x: npt.ArrayLike) -> Array:
        """Scores of every row of ``x``."""
        return self._score_features(self.features.transform(x))

    def __call__(self, x: npt.ArrayLike) -> Array:
        return self.scores(x)


@dataclass(frozen=True, eq=False)
class LinearModel(ScoringModel):
    """s(z) = ⟨w, φ(z)⟩ + b with φ the feature map."""

    kind: ClassVar[ModelKind] = "linear"

    features: FeatureMap
    weights: Array = field(repr=False)
    bias: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", _frozen(self.weights))
        if self.weights.shape != (self.features.dim_out,):
            raise InvalidInput(f"weights must have {self.features.dim_out} entries, got {self.weights.shape}")

    def _score_features(self, z: Array) -> Array:
        return np.asarray(z @ self.weights + self.bias, dtype=np.float64)

    def rescaled(self, c: float) -> LinearModel:
        return LinearModel(features=self.features, weights=self.weights * c, bias=self.bias * c)


@dataclass(frozen=True, eq=False)
class FixedModel(LinearModel):
    """Externally supplied linear coefficients (closed-form oracles); never trained."""

    kind: ClassVar[ModelKind] = "fixed"
    label: str = "oracle"


@dataclass(frozen=True, eq=False)
class MlpModel(ScoringModel):
    """One hidden tanh layer: s(z) = w2·tanh(W1 z + b1) + b2."""

    kind: ClassVar[ModelKind] = "mlp"

    features: FeatureMap
    w1: Array = field(repr=False)
    b1: Array = field(repr=False)
    w2: Array = field(repr=False)
    b2: float = 0.0

    def __post_init__(self) -> None:
        for name in ("w1", "b1", "w2"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        h = self.b1.size
        if self.w1.shape != (h, self.features.dim_out) or self.w2.shape != (h,):
            raise InvalidInput(f"inconsistent MLP shapes w1={self.w1.shape} b1={self.b1.shape} w2={self.w2.shape}")

    @property
    def layer_sizes(self) -> tuple[int, int, int]:
        return (self.features.dim_out, int(self.b1.size), 1)

    def _score_features(self, z: Array) -> Array:
        return np.asarray(np.tanh(z @ self.w1.T + self.b1) @ self.w2 + self.b2, dtype=np.float64)


@dataclass(frozen=True)
class Stump:
    feature: int
    threshold: float
    left: float
    right: float
    weight: float

    def __call__(self, z: Array) -> Array:
        return self.weight * np.where(z[:, self.feature] <= self.threshold, self.left, self.right)


@dataclass(frozen=True, eq=False)
class StumpEnsemble(ScoringModel):
    """Σ_k weight_k · (left_k if z[f_k] ≤ thr_k else right_k)."""

    kind: ClassVar[ModelKind] = "boosted"

    features: FeatureMap
    stumps: tuple[Stump, ...] = ()

    def _score_features(self, z: Array) -> Array:
        out = np.zeros(z.shape[0], dtype=np.float64)
        for stump in self.stumps:
            out += stump(z)
        return out


def score(model: ScoringModel, x: npt.ArrayLike) -> float:
    """Score of a single observation ``x`` (a length-d vector)."""
    vec = np.asarray(x, dtype=np.float64)
    if vec.ndim != 1:
        raise InvalidInput(f"score expects one observation (a 1-d vector), got shape {vec.shape}")
    if vec.size != model.dim:
        raise InvalidInput(f"observation has {vec.size} features, model expects {model.dim}")
    return float(model.scores(vec.reshape(1, -1))[0])


def zero_linear(features: FeatureMap) -> LinearModel:
    return LinearModel(features=features, weights=np.zeros(features.dim_out))


__all__ = [
    "ModelKind",
    "as_matrix",
    "quadratic_features",
    "FeatureMap",
    "fit_feature_map",
    "ScoringModel",
    "LinearModel",
    "FixedModel",
    "MlpModel",
    "Stump",
    "StumpEnsemble",
    "score",
    "zero_linear",
]
