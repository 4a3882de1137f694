# tests/utils.py
from __future__ import annotations

from typing import Any

import numpy as np

from src.schemas.models import ExperimentConfig, ModelGrid, TrainConfig


# =========================
# Data factories
# =========================
def make_gaussian_pair(n: int = 60, m: int = 60, d: int = 2, shift: float = 0.0, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """X ~ N(shift·1, I), Y ~ N(0, I), drawn from one seeded stream."""
    g = np.random.default_rng(seed)
    x = g.normal(size=(n, d)) + shift
    y = g.normal(size=(m, d))
    return x, y


def make_scores(n: int = 10, m: int = 10, separated: bool = False, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Univariate scores; ``separated`` puts every positive above every negative."""
    if separated:
        return np.arange(m, m + n, dtype=float), np.arange(m, dtype=float)
    g = np.random.default_rng(seed)
    return g.normal(size=n), g.normal(size=m)


# =========================
# Config factories
# =========================
def make_train_config(**overrides: Any) -> TrainConfig:
    base = {"epochs": 60, "learning_rate": 0.1, "pair_budget": 2_000, "seed": 3}
    base.update(overrides)
    return TrainConfig(**base)


def make_experiment_config(**overrides: Any) -> ExperimentConfig:
    base: dict[str, Any] = {
        "name": "tiny",
        "models": [ModelGrid(variant="L1minus", dims=[4], epsilons=[0.0])],
        "methods": ["rlinear"],
        "phis": ["mww"],
        "N": 40,
        "replications": 2,
        "alphas": [0.05, 0.5],
        "b_perm": 19,
        "depth_directions": 20,
        "train": make_train_config(epochs=10),
        "master_seed": 11,
    }
    base.update(overrides)
    return ExperimentConfig(**base)
