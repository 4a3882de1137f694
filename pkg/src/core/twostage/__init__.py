# src/core/twostage/__init__.py
"""Split → train → score → rank-test pipeline, its ROC-space variant and union-bound combinations."""

from .split import SplitSamples, split_samples, train_size
from .combined import bonferroni_levels, combined_p_value, combined_test
from .ranking import (
    RankerLike,
    check_alpha,
    fit_ranker,
    multi_phi_test,
    rank_decision,
    rank_test_on_scores,
    ranker_descriptor,
    ranking_test,
    score_holdout,
)
from .roc_region import MIN_DRAWS, roc_distance_of_scores, roc_null_threshold, roc_space_test, roc_test_on_scores

__all__ = [
    "SplitSamples",
    "split_samples",
    "train_size",
    "bonferroni_levels",
    "combined_p_value",
    "combined_test",
    "RankerLike",
    "check_alpha",
    "fit_ranker",
    "multi_phi_test",
    "rank_test_on_scores",
    "ranker_descriptor",
    "ranking_test",
    "score_holdout",
    "MIN_DRAWS",
    "roc_distance_of_scores",
    "roc_null_threshold",
    "roc_space_test",
    "roc_test_on_scores",
]
