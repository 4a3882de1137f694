# src/synthdata/__init__.py
"""Synthetic two-sample models, seeded generation, CSV export and closed-form oracle scorers."""

from .covariance import L1_BANDS, build_covariance, equicorrelation, from_bands, power_decay
from .models import (
    CauchyDistribution,
    Distribution,
    GaussianDistribution,
    LogNormalDistribution,
    Role,
    Sample,
    generate,
    model_distributions,
)
from .oracle import OracleSign, location_oracle, oracle_scorer, quadratic_weights, resolve_scale_oracle_sign, scale_oracle_matrix
from .export import read_sample, sample_to_csv, sidecar_path, write_sample

__all__ = [
    "L1_BANDS",
    "build_covariance",
    "equicorrelation",
    "from_bands",
    "power_decay",
    "CauchyDistribution",
    "Distribution",
    "GaussianDistribution",
    "LogNormalDistribution",
    "Role",
    "Sample",
    "generate",
    "model_distributions",
    "OracleSign",
    "location_oracle",
    "oracle_scorer",
    "quadratic_weights",
    "resolve_scale_oracle_sign",
    "scale_oracle_matrix",
    "read_sample",
    "sample_to_csv",
    "sidecar_path",
    "write_sample",
]
