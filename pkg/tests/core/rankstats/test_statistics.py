# tests/core/rankstats/test_statistics.py
from __future__ import annotations

import numpy as np
import pytest

from src.core.errors import InvalidInput
from src.core.rankstats import MWW, ScoreGenerator, centered_from_ranks, linear_rank_statistic, midranks, mww_statistic


@pytest.mark.parametrize(
    ("pooled", "expected"),
    [([1, 2, 3], [1, 2, 3]), ([5, 1, 5], [2.5, 1, 2.5]), ([7, 7, 7], [2, 2, 2])],
)
def test_midranks_share_the_mean_position_on_ties(pooled: list[float], expected: list[float]) -> None:
    rv = midranks(pooled)
    np.testing.assert_array_equal(rv.ranks, expected)
    assert rv.pooled_size == len(pooled)


def test_midranks_reject_non_finite_values() -> None:
    with pytest.raises(InvalidInput):
        midranks([1.0, np.nan])


def test_linear_rank_statistic_small_hand_example() -> None:
    raw, centered = linear_rank_statistic([2, 4], [1, 3], MWW)
    assert raw == pytest.approx(1.2)
    assert centered == pytest.approx(0.1)


def test_single_tied_pair_is_centered_at_zero() -> None:
    stat = linear_rank_statistic([1], [1], MWW)
    assert stat.raw == pytest.approx(0.5)
    assert stat.centered == pytest.approx(0.0)
    assert (stat.n, stat.m) == (1, 1)


def test_power_generator_weights_the_top_rank() -> None:
    raw, centered = linear_rank_statistic([10], [1], ScoreGenerator.power(2.0))
    assert raw == pytest.approx(4.0 / 9.0)
    assert centered == pytest.approx(1.0 / 9.0)


@pytest.mark.parametrize(("x", "y", "expected"), [([2, 4], [1, 3], 6.0), ([1, 2], [3, 4], 3.0), ([3, 4], [1, 2], 7.0)])
def test_mww_rank_sum(x: list[float], y: list[float], expected: float) -> None:
    assert mww_statistic(x, y) == expected


@pytest.mark.parametrize(("x", "y"), [([], [1.0]), ([1.0], [])])
def test_empty_samples_are_rejected(x: list[float], y: list[float]) -> None:
    with pytest.raises(InvalidInput):
        linear_rank_statistic(x, y, MWW)


def test_centered_from_ranks_agrees_with_the_scalar_statistic() -> None:
    x, y = [0.3, 2.0, -1.0], [0.1, 0.5]
    _, centered = linear_rank_statistic(x, y, ScoreGenerator.power(2.0))
    ranks = midranks(np.concatenate([x, y])).ranks[:3]
    batch = centered_from_ranks(ranks[None, :], 3, 2, ScoreGenerator.power(2.0))
    assert batch.shape == (1,)
    assert batch[0] == pytest.approx(centered)


def test_constant_scores_give_the_full_tie_value() -> None:
    # every midrank is (N+1)/2, so the normalized rank is exactly one half
    stat = linear_rank_statistic(np.zeros(10), np.zeros(10), MWW)
    assert stat.centered == pytest.approx(0.0, abs=1e-12)
