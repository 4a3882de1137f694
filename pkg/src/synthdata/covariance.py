# src/synthdata/covariance.py
"""
Covariance matrices of the Gaussian synthetic models.

L1minus / L1plus are given by their bands (main diagonal first, then each superdiagonal);
S1 is the power-decay matrix c^|i−j| and S2 the equicorrelation matrix (1−c)·I + c·11ᵀ.
Every matrix is Cholesky-checked; a failure is a ``ModelError``, never repaired.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from scipy.linalg import cholesky

from src.core.errors import InvalidInput, ModelError
from src.core.ranker.models import Array

Bands = tuple[tuple[float, ...], ...]

# d=6 L1minus: the second superdiagonal is given with three entries; the fourth is 0 like its neighbours
L1_BANDS: dict[tuple[str, int], Bands] = {
    ("L1minus", 4): ((2, 6, 1, 5), (-1, 0, 0), (-1, 0), (-1,)),
    ("L1minus", 6): ((2, 6, 1, 5, 4, 3), (-1, 0, 0, 0, 0), (-1, 0, 0, 0), (-1, 0, 0), (-1, 0), (-1,)),
    ("L1plus", 4): ((6, 4, 5, 3), (-2, 4, 2), (-3, 0), (-2,)),
    ("L1plus", 6): ((6, 5, 5, 3, 2, 3), (-2, 4, 2, 1, 0), (-3, 0, 0, 1), (-2, 1, 1), (-3, 2), (-2,)),
}


def from_bands(bands: Sequence[Sequence[float]]) -> Array:
    """Symmetric matrix whose k-th superdiagonal (and subdiagonal) is ``bands[k]``."""
    d = len(bands[0])
    out = np.zeros((d, d), dtype=np.float64)
    for k, band in enumerate(bands):
        if len(band) != d - k:
            raise InvalidInput(f"band {k} must have {d - k} entries, got {len(band)}")
        idx = np.arange(d - k)
        out[idx, idx + k] = band
        out[idx + k, idx] = band
    return out


def power_decay(d: int, c: float) -> Array:
    lag = np.abs(np.subtract.outer(np.arange(d), np.arange(d)))
    return np.asarray(np.power(float(c), lag), dtype=np.float64)


def equicorrelation(d: int, c: float) -> Array:
    return (1.0 - c) * np.eye(d) + c * np.ones((d, d))


def check_positive_definite(sigma: Array, label: str) -> Array:
    try:
        cholesky(sigma, lower=True)
    except np.linalg.LinAlgError as e:
        raise ModelError(f"{label} covariance is not positive definite: {e}") from e
    return sigma


def build_covariance(variant: str, d: int, correlation: float | None = None) -> Array:
    """
    Covariance of ``variant`` in dimension ``d``.

    ``correlation`` is the parameter c of S1/S2 (β for Y, β + ε for X); it is ignored by L1±.
    """
    if variant in ("L1minus", "L1plus"):
        bands = L1_BANDS.get((variant, d))
        if bands is None:
            raise InvalidInput(f"{variant} is defined for d in {{4, 6}}, got d={d}")
        sigma = from_bands(bands)
    elif variant in ("S1", "S2"):
        if correlation is None:
            raise InvalidInput(f"{variant} needs a correlation parameter")
        sigma = power_decay(d, correlation) if variant == "S1" else equicorrelation(d, correlation)
    else:
        raise InvalidInput(f"no Gaussian covariance for variant {variant!r}")
    return check_positive_definite(sigma, f"{variant}(d={d})")


__all__ = ["L1_BANDS", "from_bands", "power_decay", "equicorrelation", "check_positive_definite", "build_covariance"]
