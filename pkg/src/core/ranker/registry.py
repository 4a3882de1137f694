# src/core/ranker/registry.py
"""Name → trainer lookup used by the two-stage test and the experiment harness."""

from __future__ import annotations

from collections.abc import Callable

import numpy.typing as npt

from src.core.errors import InvalidInput
from src.core.rankstats.generators import ScoreGenerator
from src.core.ranker.boosted import train_boosted_pairwise
from src.core.ranker.linear import train_linear_pairwise
from src.core.ranker.mlp import train_mlp_pairwise
from src.core.ranker.models import ScoringModel
from src.core.ranker.wphi import train_smoothed_wphi
from src.schemas.models import TrainConfig

Trainer = Callable[[npt.ArrayLike, npt.ArrayLike, TrainConfig, ScoreGenerator], ScoringModel]


def _linear(x: npt.ArrayLike, y: npt.ArrayLike, cfg: TrainConfig, phi: ScoreGenerator) -> ScoringModel:
    return train_linear_pairwise(x, y, cfg)


def _mlp(x: npt.ArrayLike, y: npt.ArrayLike, cfg: TrainConfig, phi: ScoreGenerator) -> ScoringModel:
    return train_mlp_pairwise(x, y, cfg)


def _boosted(x: npt.ArrayLike, y: npt.ArrayLike, cfg: TrainConfig, phi: ScoreGenerator) -> ScoringModel:
    return train_boosted_pairwise(x, y, cfg)


def _wphi(x: npt.ArrayLike, y: npt.ArrayLike, cfg: TrainConfig, phi: ScoreGenerator) -> ScoringModel:
    return train_smoothed_wphi(x, y, phi, cfg)


TRAINERS: dict[str, Trainer] = {
    "linear": _linear,
    "mlp": _mlp,
    "boosted": _boosted,
    "wphi": _wphi,
}


def get_trainer(name: str) -> Trainer:
    """
    Trainer for ``name`` in {linear, mlp, boosted, wphi}. Closed-form oracles are not
    trained: build them with ``src.synthdata.oracle_scorer`` and pass the model directly.
    """
    try:
        return TRAINERS[name]
    except KeyError:
        raise InvalidInput(f"unknown ranker {name!r}; expected one of {sorted(TRAINERS)}") from None


__all__ = ["Trainer", "TRAINERS", "get_trainer"]
