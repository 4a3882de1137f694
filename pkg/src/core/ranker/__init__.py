# src/core/ranker/__init__.py
"""Bipartite ranking trainers producing the Step-1 scoring function."""

from .models import (
    FeatureMap,
    FixedModel,
    LinearModel,
    MlpModel,
    ScoringModel,
    Stump,
    StumpEnsemble,
    as_matrix,
    fit_feature_map,
    quadratic_features,
    score,
)
from .linear import squared_hinge_loss, train_linear_pairwise
from .mlp import pairwise_logistic_loss, train_mlp_pairwise
from .boosted import train_boosted_pairwise
from .wphi import smoothed_ranks, smoothed_wphi_objective, train_smoothed_wphi, wphi_ascent
from .codec import dumps_model, load_model, loads_model, save_model
from .registry import TRAINERS, Trainer, get_trainer

__all__ = [
    "FeatureMap",
    "FixedModel",
    "LinearModel",
    "MlpModel",
    "ScoringModel",
    "Stump",
    "StumpEnsemble",
    "as_matrix",
    "fit_feature_map",
    "quadratic_features",
    "score",
    "squared_hinge_loss",
    "train_linear_pairwise",
    "pairwise_logistic_loss",
    "train_mlp_pairwise",
    "train_boosted_pairwise",
    "smoothed_ranks",
    "smoothed_wphi_objective",
    "wphi_ascent",
    "train_smoothed_wphi",
    "dumps_model",
    "loads_model",
    "save_model",
    "load_model",
    "TRAINERS",
    "Trainer",
    "get_trainer",
]
