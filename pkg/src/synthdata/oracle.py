# src/synthdata/oracle.py
"""
Closed-form optimal scorers of the Gaussian synthetic models.

- L1±: the linear scorer ⟨z, Γ⁻¹δ⟩ of the Gaussian location oracle.
- S1/S2: the quadratic scorer ⟨z, θz⟩ expressed as a linear model on quadratic features.
  The log-likelihood ratio of X against Y gives θ = Σ_Y⁻¹ − Σ_X⁻¹ (``likelihood``); the
  opposite sign, Σ_X⁻¹ − Σ_Y⁻¹, is available as ``reported``.
"""

from __future__ import annotations

import logging
from typing import Literal

import numpy as np
import numpy.typing as npt
from scipy.linalg import cho_factor, cho_solve

from src.core.errors import NoClosedFormOracle
from src.core.ranker.models import Array, FeatureMap, FixedModel, as_matrix
from src.core.roc.curves import auc_pairwise
from src.core.roc.gaussian import GaussianOracle
from src.schemas.models import ModelSpec
from src.synthdata.covariance import build_covariance

logger = logging.getLogger(__name__)

OracleSign = Literal["likelihood", "reported"]


def location_oracle(spec: ModelSpec) -> GaussianOracle:
    """Gaussian location oracle (δ = μ_X − μ_Y, Γ) of an L1± model."""
    if spec.variant not in ("L1minus", "L1plus"):
        raise NoClosedFormOracle(f"{spec.variant} is not a Gaussian location model")
    d = spec.dim
    return GaussianOracle(np.full(d, spec.epsilon / np.sqrt(d)), build_covariance(spec.variant, d))


def _inverse(sigma: Array) -> Array:
    return np.asarray(cho_solve(cho_factor(sigma, lower=True), np.eye(sigma.shape[0])), dtype=np.float64)


def scale_oracle_matrix(spec: ModelSpec, sign: OracleSign = "likelihood") -> Array:
    """θ of the quadratic oracle of an S1/S2 model."""
    if spec.variant not in ("S1", "S2"):
        raise NoClosedFormOracle(f"{spec.variant} is not a Gaussian scale model")
    beta = spec.beta if spec.beta is not None else 0.0
    inv_x = _inverse(build_covariance(spec.variant, spec.dim, beta + spec.epsilon))
    inv_y = _inverse(build_covariance(spec.variant, spec.dim, beta))
    theta = inv_y - inv_x
    return theta if sign == "likelihood" else -theta


def quadratic_weights(theta: Array) -> Array:
    """Weights on ``quadratic_features`` reproducing zᵀθz: zero linear part, θ_ii and 2θ_ij."""
    d = theta.shape[0]
    iu, ju = np.triu_indices(d)
    quad = np.where(iu == ju, 1.0, 2.0) * theta[iu, ju]
    return np.concatenate([np.zeros(d), quad])


def oracle_scorer(spec: ModelSpec, sign: OracleSign = "likelihood") -> FixedModel:
    """Optimal scorer of an L1±, S1 or S2 model; T models have none."""
    if spec.variant in ("L1minus", "L1plus"):
        oracle = location_oracle(spec)
        return FixedModel(features=FeatureMap(dim_in=spec.dim), weights=oracle.direction)
    if spec.variant in ("S1", "S2"):
        theta = scale_oracle_matrix(spec, sign)
        return FixedModel(features=FeatureMap(dim_in=spec.dim, quadratic=True), weights=quadratic_weights(theta))
    raise NoClosedFormOracle(f"{spec.variant} has no closed-form optimal scoring function")


def resolve_scale_oracle_sign(spec: ModelSpec, x_pilot: npt.ArrayLike, y_pilot: npt.ArrayLike) -> OracleSign:
    """
    ``likelihood`` when its quadratic oracle ranks the pilot X above Y at least half the time
    (AUC ≥ 1/2), otherwise ``reported``. Location models always resolve to ``likelihood``.
    """
    if spec.variant not in ("S1", "S2"):
        return "likelihood"
    model = oracle_scorer(spec, "likelihood")
    auc = auc_pairwise(model.scores(as_matrix(y_pilot, "Y")), model.scores(as_matrix(x_pilot, "X")))
    sign: OracleSign = "likelihood" if auc >= 0.5 else "reported"
    logger.debug("scale oracle sign for %s: %s (pilot AUC %.4f)", spec.descriptor, sign, auc)
    return sign


__all__ = [
    "OracleSign",
    "location_oracle",
    "scale_oracle_matrix",
    "quadratic_weights",
    "oracle_scorer",
    "resolve_scale_oracle_sign",
]
