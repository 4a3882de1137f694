# src/core/baselines/permutation.py
"""
Label-permutation calibration for pooled two-sample statistics.

A statistic is split into a label-free ``prepare`` step on the pooled sample (kernel or
distance matrix, spanning tree) and a cheap ``evaluate`` step that only looks at which
pooled rows are labelled X. Each permutation reshuffles the labels, keeping (n, m), and
re-evaluates on the prepared structure.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from typing import Any, Literal

import numpy as np
import numpy.typing as npt

from src.core.ranker.models import Array, as_matrix
from src.core.rng import make_rng
from src.core.errors import InvalidInput
from src.schemas.models import PermutationScheme, TestReport

logger = logging.getLogger(__name__)

Tail = Literal["upper", "lower"]

BoolArray = npt.NDArray[np.bool_]

_TIE_RTOL = 1e-10


class PooledStatistic(ABC):
    """Two-sample statistic computed from the pooled sample and an X/Y label mask."""

    name: str = "statistic"

    @abstractmethod
    def prepare(self, pooled: Array) -> Any:
        """Label-free structure of the pooled (N, d) sample."""

    @abstractmethod
    def evaluate(self, prepared: Any, labels: BoolArray) -> float:
        """Statistic value when the rows flagged True are the X sample."""

    def __call__(self, x: npt.ArrayLike, y: npt.ArrayLike) -> float:
        pooled, labels = pool(x, y)
        return self.evaluate(self.prepare(pooled), labels)


def pool(x: npt.ArrayLike, y: npt.ArrayLike) -> tuple[Array, BoolArray]:
    xs = as_matrix(x, "X")
    ys = as_matrix(y, "Y")
    if xs.shape[1] != ys.shape[1]:
        raise InvalidInput(f"X and Y must share a dimension, got {xs.shape[1]} and {ys.shape[1]}")
    labels = np.zeros(xs.shape[0] + ys.shape[0], dtype=bool)
    labels[: xs.shape[0]] = True
    return np.vstack([xs, ys]), labels


def permutation_draws(statistic: PooledStatistic, prepared: Any, labels: BoolArray, scheme: PermutationScheme) -> Array:
    """Statistic under ``b_perm`` label shuffles; draw b uses its own stream (seed, 'permutation', b)."""
    out = np.empty(scheme.b_perm, dtype=np.float64)
    for b in range(scheme.b_perm):
        shuffled = labels[make_rng(scheme.seed, "permutation", b).permutation(labels.size)]
        out[b] = statistic.evaluate(prepared, shuffled)
    return out


def tail_p_value(observed: float, draws: Array, tail: Tail) -> float:
    """(1 + #{draws at least as extreme}) / (1 + B); ties within float noise count as extreme."""
    tol = _TIE_RTOL * max(1.0, abs(observed))
    if tail == "upper":
        extreme = int(np.count_nonzero(draws >= observed - tol))
    elif tail == "lower":
        extreme = int(np.count_nonzero(draws <= observed + tol))
    else:
        raise InvalidInput(f"unsupported tail {tail!r}")
    return (1 + extreme) / (1 + draws.size)


def permutation_pvalue(
    statistic: PooledStatistic,
    x: npt.ArrayLike,
    y: npt.ArrayLike,
    scheme: PermutationScheme,
    tail: Tail = "upper",
) -> float:
    pooled, labels = pool(x, y)
    prepared = statistic.prepare(pooled)
    observed = statistic.evaluate(prepared, labels)
    return tail_p_value(observed, permutation_draws(statistic, prepared, labels, scheme), tail)


def permutation_test(
    statistic: PooledStatistic,
    x: npt.ArrayLike,
    y: npt.ArrayLike,
    alpha: float,
    scheme: PermutationScheme,
    tail: Tail = "upper",
    *,
    diagnostics: dict[str, float] | None = None,
) -> TestReport:
    """Permutation-calibrated test; rejects iff p ≤ α."""
    if not (0.0 < alpha < 1.0):
        raise InvalidInput(f"alpha must be in (0, 1), got {alpha}")
    pooled, labels = pool(x, y)
    prepared = statistic.prepare(pooled)
    observed = statistic.evaluate(prepared, labels)
    draws = permutation_draws(statistic, prepared, labels, scheme)
    p = tail_p_value(observed, draws, tail)
    logger.debug("%s: observed=%.6g p=%.4g (B=%d, %s tail)", statistic.name, observed, p, scheme.b_perm, tail)
    n = int(labels.sum())
    return TestReport(
        method=statistic.name,
        statistic=observed,
        statistic_centered=observed,
        p_value=p,
        reject=p <= alpha,
        alpha=alpha,
        sided=tail,
        n_test=n,
        m_test=labels.size - n,
        null_method="permutation",
        seed=scheme.seed,
        diagnostics={"b_perm": float(scheme.b_perm), **(diagnostics or {})},
    )


__all__ = [
    "Tail",
    "PooledStatistic",
    "pool",
    "permutation_draws",
    "tail_p_value",
    "permutation_pvalue",
    "permutation_test",
]
