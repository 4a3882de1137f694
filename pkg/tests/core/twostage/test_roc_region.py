# tests/core/twostage/test_roc_region.py
from __future__ import annotations

import math

import numpy as np
import pytest

from src.core.errors import InvalidInput
from src.core.roc import empirical_roc, roc_distance
from src.core.twostage import roc_distance_of_scores, roc_null_threshold, roc_space_test, roc_test_on_scores
from src.schemas.models import RankerSpec, SplitConfig
from tests.utils import make_scores, make_train_config


def test_single_pair_always_touches_a_corner() -> None:
    region = roc_null_threshold(1, 1, [0.05, 0.5])
    assert region.values == [1.0]
    assert region.thresholds == [1.0, 1.0]
    assert region.method == "exact"


def test_two_by_two_enumeration() -> None:
    region = roc_null_threshold(2, 2, 0.05)
    assert region.values == pytest.approx([0.5, 1.0])
    assert region.probabilities == pytest.approx([4 / 6, 2 / 6])
    assert region.threshold_at(0.05) == 1.0
    assert region.threshold_at(0.4) == 0.5


def test_enumerated_distances_match_the_curve_geometry() -> None:
    # table entries computed from label arrangements agree with roc_distance on real curves
    for metric in ("sup", "l1"):
        region = roc_null_threshold(3, 2, 0.1, metric=metric)
        g = np.random.default_rng(0)
        for _ in range(10):
            sx, sy = g.normal(size=3), g.normal(size=2)
            d = roc_distance(empirical_roc(sy, sx), metric)
            assert min(abs(v - d) for v in region.values) < 1e-9


def test_large_sizes_fall_back_to_seeded_montecarlo() -> None:
    a = roc_null_threshold(12, 12, 0.05, draws=2_000, seed=3, budget=1_000)
    b = roc_null_threshold(12, 12, 0.05, draws=2_000, seed=3, budget=1_000)
    assert a.method == "montecarlo"
    assert (a.draws, a.seed) == (2_000, 3)
    assert a.thresholds == b.thresholds
    assert sum(a.probabilities) == pytest.approx(1.0)


def test_too_few_draws_are_rejected() -> None:
    with pytest.raises(InvalidInput):
        roc_null_threshold(5, 5, 0.05, draws=10)


def test_identical_scores_do_not_reject() -> None:
    s = np.arange(5, dtype=float)
    region = roc_null_threshold(5, 5, 0.05)
    report = roc_test_on_scores(s, s.copy(), 0.05, region)
    assert report.statistic == pytest.approx(0.0)
    assert not report.reject
    assert report.p_value == 1.0


def test_perfect_separation_reaches_the_corner() -> None:
    sx, sy = make_scores(6, 6, separated=True)
    assert roc_distance_of_scores(sx, sy) == 1.0
    region = roc_null_threshold(6, 6, 0.05)
    report = roc_test_on_scores(sx, sy, 0.05, region)
    assert report.reject == (region.threshold_at(0.05) < 1.0)
    assert report.p_value == pytest.approx(2 / math.comb(12, 6))


def test_region_size_must_match_the_holdout() -> None:
    with pytest.raises(InvalidInput):
        roc_test_on_scores(np.zeros(3), np.zeros(4), 0.05, roc_null_threshold(3, 3, 0.05))


def test_roc_space_test_end_to_end(gaussian_pair) -> None:
    x, y = gaussian_pair(n=60, m=60, d=2, shift=2.0, seed=4)
    region = roc_null_threshold(12, 12, 0.05)
    report = roc_space_test(x, y, RankerSpec(train=make_train_config()), 0.05, SplitConfig(seed=1), region)
    assert report.method == "roc-sup"
    assert (report.n_train, report.m_train) == (48, 48)
    assert report.reject


@pytest.mark.slow
def test_roc_region_controls_the_level_under_the_null() -> None:
    reps, alpha = 400, 0.05
    region = roc_null_threshold(15, 15, alpha)
    rejections = 0
    for r in range(reps):
        g = np.random.default_rng(r)
        rejections += roc_test_on_scores(g.normal(size=15), g.normal(size=15), alpha, region).reject
    assert rejections / reps <= alpha + 3 * math.sqrt(alpha * (1 - alpha) / reps)
