# tests/__init__.py
"""
Expose common test utilities so tests can import directly:
    from tests import make_scores, make_gaussian_pair
"""

from .utils import (
    make_experiment_config,
    make_gaussian_pair,
    make_scores,
    make_train_config,
)

__all__ = [
    "make_scores",
    "make_gaussian_pair",
    "make_train_config",
    "make_experiment_config",
]
