# src/core/twostage/roc_region.py
"""
ROC-space variant of the two-stage test.

Under H₀ the order of the scored holdout points is a uniformly random arrangement of n″
positive and m″ negative labels, so the distance of the holdout empirical ROC to the
diagonal has a null law that depends only on (n″, m″). It is tabulated by enumerating the
arrangements (when few enough) or by Monte Carlo, and the test rejects when the observed
distance exceeds the (1 − α)-quantile t_α.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterator, Sequence

import numpy as np
import numpy.typing as npt

from src.core.errors import InvalidInput
from src.core.rankstats.generators import MWW
from src.core.rankstats.null_table import subset_count
from src.core.ranker.models import Array
from src.core.rng import make_rng
from src.core.roc.curves import RocMetric, empirical_roc, roc_distance
from src.core.twostage.ranking import RankerLike, check_alpha, fit_ranker, ranker_descriptor, score_holdout
from src.core.twostage.split import split_samples
from src.schemas.models import RocRegionTable, SplitConfig, TestReport

logger = logging.getLogger(__name__)

MIN_DRAWS = 1000
DEFAULT_ROC_EXACT_BUDGET = 200_000
_CHUNK = 8_192
_DIST_TOL = 1e-12


def _distances(labels: npt.NDArray[np.int8], n: int, m: int, metric: RocMetric) -> Array:
    """Distance to the diagonal of the curve traced by each row of descending-score labels."""
    tp = np.cumsum(labels, axis=1) / n
    fp = np.cumsum(1 - labels, axis=1) / m
    gap = np.hstack([np.zeros((labels.shape[0], 1)), tp - fp])
    if metric == "sup":
        return np.asarray(np.max(np.abs(gap), axis=1), dtype=np.float64)
    # L1: only negative labels move along the α axis, by 1/m each, with tpr fixed
    g0, g1 = gap[:, :-1], gap[:, 1:]
    width = (1 - labels) / m
    same = g0 * g1 >= 0
    abs_sum = np.abs(g0) + np.abs(g1)
    crossing = np.divide(g0**2 + g1**2, 2.0 * abs_sum, out=np.zeros_like(abs_sum), where=abs_sum > 0)
    return np.asarray(np.sum(width * np.where(same, abs_sum / 2.0, crossing), axis=1), dtype=np.float64)


def _exact_label_chunks(n: int, m: int) -> Iterator[npt.NDArray[np.int8]]:
    total = n + m
    combos = itertools.combinations(range(total), n)
    while True:
        chunk = list(itertools.islice(combos, _CHUNK))
        if not chunk:
            return
        labels = np.zeros((len(chunk), total), dtype=np.int8)
        rows = np.repeat(np.arange(len(chunk)), n)
        labels[rows, np.asarray(chunk).ravel()] = 1
        yield labels


def _montecarlo_label_chunks(n: int, m: int, draws: int, seed: int) -> Iterator[npt.NDArray[np.int8]]:
    rng = make_rng(seed, "roc-region", n, m)
    base = np.concatenate([np.ones(n, dtype=np.int8), np.zeros(m, dtype=np.int8)])
    done = 0
    while done < draws:
        size = min(_CHUNK, draws - done)
        yield rng.permuted(np.tile(base, (size, 1)), axis=1)
        done += size


def _support(samples: Array) -> tuple[list[float], list[float]]:
    rounded = np.round(samples, 12)
    values, counts = np.unique(rounded, return_counts=True)
    return [float(v) for v in values], [float(c) / samples.size for c in counts]


def roc_null_threshold(
    n_test: int,
    m_test: int,
    alpha: float | Sequence[float],
    draws: int = 10_000,
    seed: int = 0,
    *,
    metric: RocMetric = "sup",
    budget: int = DEFAULT_ROC_EXACT_BUDGET,
) -> RocRegionTable:
    """
    Null law of the ROC distance for holdout sizes (n″, m″) with t_α for each requested α.

    Enumerates all C(N″, n″) label arrangements when that count is within ``budget``,
    otherwise draws ``draws`` (≥ 1000) uniform arrangements from the seeded stream.
    """
    if n_test < 1 or m_test < 1:
        raise InvalidInput(f"holdout sizes must be >= 1, got n''={n_test}, m''={m_test}")
    if draws < MIN_DRAWS:
        raise InvalidInput(f"draws must be >= {MIN_DRAWS}, got {draws}")
    alphas = [float(alpha)] if isinstance(alpha, int | float) else [float(a) for a in alpha]
    for a in alphas:
        check_alpha(a)

    if subset_count(n_test, m_test) <= budget:
        chunks = _exact_label_chunks(n_test, m_test)
        method, used_draws, used_seed = "exact", 0, 0
    else:
        chunks = _montecarlo_label_chunks(n_test, m_test, draws, seed)
        method, used_draws, used_seed = "montecarlo", draws, seed
        logger.info("ROC region for (%d, %d): Monte Carlo with %d draws", n_test, m_test, draws)

    dist = np.concatenate([_distances(c, n_test, m_test, metric) for c in chunks])
    values, probabilities = _support(dist)
    table = RocRegionTable(
        n_test=n_test,
        m_test=m_test,
        metric=metric,
        method=method,
        draws=used_draws,
        seed=used_seed,
        values=values,
        probabilities=probabilities,
    )
    grid = sorted(set(alphas))
    return table.model_copy(update={"alphas": grid, "thresholds": [table.threshold_at(a) for a in grid]})


def roc_distance_of_scores(x_scores: npt.ArrayLike, y_scores: npt.ArrayLike, metric: RocMetric = "sup") -> float:
    return roc_distance(empirical_roc(y_scores, x_scores), metric)


def roc_test_on_scores(x_scores: Array, y_scores: Array, alpha: float, region: RocRegionTable) -> TestReport:
    """Reject iff the holdout ROC distance exceeds t_α of ``region``."""
    check_alpha(alpha)
    if (x_scores.size, y_scores.size) != (region.n_test, region.m_test):
        raise InvalidInput(
            f"region was tabulated for (n'', m'') = ({region.n_test}, {region.m_test}), got ({x_scores.size}, {y_scores.size})"
        )
    distance = roc_distance_of_scores(x_scores, y_scores, region.metric)
    threshold = region.threshold_at(alpha)
    return TestReport(
        method=f"roc-{region.metric}",
        statistic=distance,
        statistic_centered=distance,
        quantile=threshold,
        p_value=region.p_value(distance),
        reject=distance > threshold + _DIST_TOL,
        alpha=alpha,
        n_test=region.n_test,
        m_test=region.m_test,
        null_method=region.method,
    )


def roc_space_test(
    x: npt.ArrayLike,
    y: npt.ArrayLike,
    ranker: RankerLike,
    alpha: float,
    split: SplitConfig | None,
    region: RocRegionTable,
) -> TestReport:
    """Two-stage test with the ROC-space critical region in place of a rank statistic."""
    split = split or SplitConfig()
    parts = split_samples(x, y, split)
    model, notes = fit_ranker(ranker, parts.x_train, parts.y_train, MWW)
    sx, sy = score_holdout(model, parts)
    report = roc_test_on_scores(sx, sy, alpha, region)
    return report.model_copy(
        update={
            "n_train": parts.x_train.shape[0],
            "m_train": parts.y_train.shape[0],
            "ranker": ranker_descriptor(ranker),
            "seed": split.seed,
            "warnings": notes,
        }
    )


__all__ = [
    "MIN_DRAWS",
    "roc_null_threshold",
    "roc_distance_of_scores",
    "roc_test_on_scores",
    "roc_space_test",
]
