# src/core/roc/__init__.py
from .curves import RocCurve, RocMetric, auc_from_curve, auc_pairwise, concordant_pairs, empirical_roc, roc_distance
from .gaussian import GaussianOracle, binormal_auc, gaussian_roc_star

__all__ = [
    "RocCurve",
    "RocMetric",
    "empirical_roc",
    "concordant_pairs",
    "auc_pairwise",
    "auc_from_curve",
    "roc_distance",
    "GaussianOracle",
    "gaussian_roc_star",
    "binormal_auc",
]
