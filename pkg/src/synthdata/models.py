# src/synthdata/models.py
"""
Synthetic two-sample models and their seeded generation.

``model_distributions(spec)`` returns the (X, Y) distribution pair. At ε = 0 both roles
get the very same object, so H₀ holds by construction rather than by parameter equality.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import numpy.typing as npt
from scipy.linalg import cholesky

from src.core.errors import InvalidInput, ModelError
from src.core.ranker.models import Array
from src.core.rng import PRNG_NAME, make_rng
from src.schemas.models import ModelSpec
from src.synthdata.covariance import build_covariance

logger = logging.getLogger(__name__)

Role = Literal["X", "Y"]

_MAX_REDRAWS = 100


class Distribution(ABC):
    @property
    @abstractmethod
    def dim(self) -> int: ...

    @abstractmethod
    def sample(self, rng: np.random.Generator, size: int) -> Array: ...


@dataclass(frozen=True, eq=False)
class GaussianDistribution(Distribution):
    """N(mean, cov), drawn as mean + L·ξ with L the lower Cholesky factor."""

    mean: Array = field(repr=False)
    cov: Array = field(repr=False)
    _chol: Array = field(init=False, repr=False)

    def __post_init__(self) -> None:
        mean = np.asarray(self.mean, dtype=np.float64).reshape(-1)
        cov = np.atleast_2d(np.asarray(self.cov, dtype=np.float64))
        if cov.shape != (mean.size, mean.size):
            raise InvalidInput(f"covariance must be {mean.size}x{mean.size}, got {cov.shape}")
        try:
            chol = cholesky(cov, lower=True)
        except np.linalg.LinAlgError as e:
            raise ModelError(f"covariance is not positive definite: {e}") from e
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)
        object.__setattr__(self, "_chol", chol)

    @property
    def dim(self) -> int:
        return int(self.mean.size)

    def sample(self, rng: np.random.Generator, size: int) -> Array:
        xi = rng.standard_normal((size, self.dim))
        return np.asarray(self.mean + xi @ self._chol.T, dtype=np.float64)


@dataclass(frozen=True, eq=False)
class CauchyDistribution(Distribution):
    """Independent Cauchy(location_j, 1) coordinates."""

    location: Array = field(repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "location", np.asarray(self.location, dtype=np.float64).reshape(-1))

    @property
    def dim(self) -> int:
        return int(self.location.size)

    def sample(self, rng: np.random.Generator, size: int) -> Array:
        draws = rng.standard_cauchy((size, self.dim))
        for _ in range(_MAX_REDRAWS):
            bad = ~np.isfinite(draws)
            if not bad.any():
                break
            draws[bad] = rng.standard_cauchy(int(bad.sum()))
        else:
            raise ModelError("Cauchy draws stayed non-finite after repeated regeneration")
        return np.asarray(draws + self.location, dtype=np.float64)


@dataclass(frozen=True, eq=False)
class LogNormalDistribution(Distribution):
    """Componentwise exp of a Gaussian model."""

    base: GaussianDistribution

    @property
    def dim(self) -> int:
        return self.base.dim

    def sample(self, rng: np.random.Generator, size: int) -> Array:
        return np.exp(self.base.sample(rng, size))


def _location_shift(spec: ModelSpec) -> Array:
    return np.full(spec.dim, spec.epsilon / np.sqrt(spec.dim))


def _gaussian_pair(spec: ModelSpec, variant: str) -> tuple[GaussianDistribution, GaussianDistribution]:
    d = spec.dim
    if variant in ("L1minus", "L1plus"):
        sigma = build_covariance(variant, d)
        y = GaussianDistribution(np.zeros(d), sigma)
        if spec.epsilon == 0:
            return y, y
        return GaussianDistribution(_location_shift(spec), sigma), y
    beta = spec.beta if spec.beta is not None else 0.0
    y = GaussianDistribution(np.zeros(d), build_covariance(variant, d, beta))
    if spec.epsilon == 0:
        return y, y
    return GaussianDistribution(np.zeros(d), build_covariance(variant, d, beta + spec.epsilon)), y


def model_distributions(spec: ModelSpec) -> tuple[Distribution, Distribution]:
    """(law of X, law of Y) for ``spec``; X is the positive sample."""
    if spec.variant in ("L1minus", "L1plus", "S1", "S2"):
        return _gaussian_pair(spec, spec.variant)
    if spec.variant == "T1":
        y_law = CauchyDistribution(np.zeros(3))
        if spec.epsilon == 0:
            return y_law, y_law
        return CauchyDistribution(np.array([spec.epsilon, spec.epsilon, 0.0])), y_law
    # T2 uses the positive-definite location model; T3 the decreasing-correlation scale model
    base_variant = "L1minus" if spec.variant == "T2" else "S1"
    gx, gy = _gaussian_pair(spec, base_variant)
    y_ln = LogNormalDistribution(gy)
    return (y_ln, y_ln) if gx is gy else (LogNormalDistribution(gx), y_ln)


@dataclass(frozen=True, eq=False)
class Sample:
    """An (n, d) finite sample with the provenance needed to regenerate it."""

    values: Array = field(repr=False)
    spec: ModelSpec
    role: Role
    seed: int
    prng: str = PRNG_NAME

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 2:
            raise InvalidInput(f"a sample must be a (n, d) matrix, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise InvalidInput("sample contains non-finite values")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @property
    def d(self) -> int:
        return int(self.values.shape[1])

    def __array__(self, dtype: npt.DTypeLike = None, copy: bool | None = None) -> Array:
        return np.asarray(self.values, dtype=dtype)


def generate(spec: ModelSpec, n: int, m: int, seed: int) -> tuple[Sample, Sample]:
    """n draws of X and m draws of Y on the independent streams (seed, 'X') and (seed, 'Y')."""
    if n < 1 or m < 1:
        raise InvalidInput(f"sample sizes must be >= 1, got n={n}, m={m}")
    x_law, y_law = model_distributions(spec)
    x = x_law.sample(make_rng(seed, "X"), n)
    y = y_law.sample(make_rng(seed, "Y"), m)
    logger.debug("generated %s: n=%d m=%d seed=%d", spec.descriptor, n, m, seed)
    return Sample(x, spec, "X", seed), Sample(y, spec, "Y", seed)


__all__ = [
    "Role",
    "Distribution",
    "GaussianDistribution",
    "CauchyDistribution",
    "LogNormalDistribution",
    "model_distributions",
    "Sample",
    "generate",
]
