# src/core/rankstats/statistics.py
"""Two-sample linear rank statistics on univariate scores."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy.stats import rankdata

from src.core.errors import InvalidInput
from src.core.rankstats.generators import ScoreGenerator


@dataclass(frozen=True)
class RankVector:
    """Midranks of a pooled sample of size ``pooled_size``."""

    ranks: npt.NDArray[np.float64]
    pooled_size: int


@dataclass(frozen=True)
class RankStatistic:
    """Raw statistic Σ φ(Rank(xᵢ)/(N+1)) and its centered form raw/n − ∫φ."""

    raw: float
    centered: float
    n: int
    m: int

    def __iter__(self) -> Iterator[float]:
        # allows ``raw, centered = linear_rank_statistic(...)``
        yield self.raw
        yield self.centered


def _as_scores(values: npt.ArrayLike, name: str) -> npt.NDArray[np.float64]:
    arr = np.asarray(values, dtype=np.float64).reshape(-1)
    if arr.size == 0:
        raise InvalidInput(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput(f"{name} contains non-finite values")
    return arr


def midranks(pooled: npt.ArrayLike) -> RankVector:
    """Ranks 1..N of ``pooled``; tied values share the mean of the positions they occupy."""
    arr = _as_scores(pooled, "pooled sample")
    ranks = rankdata(arr, method="average").astype(np.float64)
    return RankVector(ranks=ranks, pooled_size=int(arr.size))


def positive_ranks(x_scores: npt.ArrayLike, y_scores: npt.ArrayLike) -> tuple[npt.NDArray[np.float64], int, int]:
    """Midranks of the positive sample within the pooled sample, plus (n, m)."""
    x = _as_scores(x_scores, "positive sample")
    y = _as_scores(y_scores, "negative sample")
    rv = midranks(np.concatenate([x, y]))
    return rv.ranks[: x.size], int(x.size), int(y.size)


def linear_rank_statistic(x_scores: npt.ArrayLike, y_scores: npt.ArrayLike, phi: ScoreGenerator) -> RankStatistic:
    """Σᵢ φ(Rank(xᵢ)/(N+1)) over the positive sample, with midranks for ties."""
    ranks, n, m = positive_ranks(x_scores, y_scores)
    raw = float(np.sum(phi(ranks / (n + m + 1.0))))
    return RankStatistic(raw=raw, centered=raw / n - phi.integral, n=n, m=m)


def mww_statistic(x_scores: npt.ArrayLike, y_scores: npt.ArrayLike) -> float:
    """Rank-sum Σᵢ Rank(xᵢ) of the positive sample (midranks for ties)."""
    ranks, _, _ = positive_ranks(x_scores, y_scores)
    return float(np.sum(ranks))


def centered_from_ranks(ranks: npt.NDArray[np.float64], n: int, m: int, phi: ScoreGenerator) -> npt.NDArray[np.float64]:
    """
    Centered statistic for a batch of positive-rank sets.

    ``ranks`` has shape (..., n); the result has the leading shape.
    """
    raw = np.sum(phi(ranks / (n + m + 1.0)), axis=-1)
    return np.asarray(raw / n - phi.integral, dtype=np.float64)


__all__ = [
    "RankVector",
    "RankStatistic",
    "midranks",
    "positive_ranks",
    "linear_rank_statistic",
    "mww_statistic",
    "centered_from_ranks",
]
