# tests/core/roc/test_curves.py
from __future__ import annotations

import numpy as np
import pytest

from src.core.errors import InvalidInput
from src.core.rankstats import mww_statistic
from src.core.roc import RocCurve, auc_from_curve, auc_pairwise, concordant_pairs, empirical_roc, roc_distance

_CORNER = RocCurve.from_points([(0.0, 0.0), (0.0, 1.0), (1.0, 1.0)])


def test_empirical_roc_breakpoints_by_threshold_sweep() -> None:
    curve = empirical_roc([1, 3], [2, 4])
    assert curve.breakpoints == [(0.0, 0.0), (0.0, 0.5), (0.5, 0.5), (0.5, 1.0), (1.0, 1.0)]


def test_perfect_separation_is_the_upper_left_corner() -> None:
    assert empirical_roc([1, 2], [3, 4]).breakpoints == [(0.0, 0.0), (0.0, 1.0), (1.0, 1.0)]


def test_identical_samples_give_the_diagonal() -> None:
    s = [0.3, -1.0, 2.5, 2.5]
    assert empirical_roc(s, s).breakpoints == [(0.0, 0.0), (1.0, 1.0)]


def test_empty_sample_is_rejected() -> None:
    with pytest.raises(InvalidInput):
        empirical_roc([], [1.0])


@pytest.mark.parametrize(("neg", "pos", "expected"), [([1, 3], [2, 4], 0.75), ([1, 2], [3, 4], 1.0), ([5, 6, 7], [5, 6, 7], 0.5)])
def test_pairwise_auc(neg: list[float], pos: list[float], expected: float) -> None:
    assert auc_pairwise(neg, pos) == pytest.approx(expected)


def test_auc_is_an_affine_image_of_the_rank_sum(rng: np.random.Generator) -> None:
    pos, neg = rng.normal(0.5, 1, 13), rng.normal(0, 1, 9)
    n, m = pos.size, neg.size
    expected = (mww_statistic(pos, neg) - n * (n + 1) / 2) / (n * m)
    assert auc_pairwise(neg, pos) == pytest.approx(expected)
    assert concordant_pairs(neg, pos) == pytest.approx(expected * n * m)


def test_curve_area_matches_pairwise_auc_with_ties(rng: np.random.Generator) -> None:
    pos = rng.integers(0, 5, 17).astype(float)
    neg = rng.integers(0, 4, 11).astype(float)
    assert auc_from_curve(empirical_roc(neg, pos)) == pytest.approx(auc_pairwise(neg, pos))


@pytest.mark.parametrize(("curve", "expected"), [(RocCurve.diagonal(), 0.5), (_CORNER, 1.0)])
def test_auc_from_curve_reference_shapes(curve: RocCurve, expected: float) -> None:
    assert auc_from_curve(curve) == pytest.approx(expected)


def test_auc_of_the_hand_example_curve() -> None:
    assert auc_from_curve(empirical_roc([1, 3], [2, 4])) == pytest.approx(0.75)


def test_distances_to_the_diagonal() -> None:
    assert roc_distance(RocCurve.diagonal(), "sup") == 0.0
    assert roc_distance(RocCurve.diagonal(), "l1") == 0.0
    assert roc_distance(_CORNER, "sup") == pytest.approx(1.0)
    assert roc_distance(_CORNER, "l1") == pytest.approx(0.5)
    assert roc_distance(empirical_roc([1, 3], [2, 4]), "l1") == pytest.approx(0.25)


def test_l1_distance_handles_a_segment_crossing_the_diagonal() -> None:
    # middle segment runs from +0.2 to −0.2 around the diagonal, crossing it at α = 0.5
    curve = RocCurve.from_points([(0.0, 0.0), (0.2, 0.4), (0.8, 0.6), (1.0, 1.0)])
    assert roc_distance(curve, "l1") == pytest.approx(0.02 + 0.06 + 0.02)
    assert roc_distance(curve, "sup") == pytest.approx(0.2)


def test_unknown_metric_is_rejected() -> None:
    with pytest.raises(InvalidInput):
        roc_distance(_CORNER, "l2")  # type: ignore[arg-type]


def test_reflection_swaps_the_samples() -> None:
    curve = empirical_roc([1, 3], [2, 4])
    assert curve.reflect().breakpoints == empirical_roc([2, 4], [1, 3]).breakpoints


def test_evaluate_interpolates_and_takes_the_top_of_vertical_segments() -> None:
    curve = empirical_roc([1, 3], [2, 4])
    np.testing.assert_allclose(curve([0.0, 0.25, 0.5, 0.75, 1.0]), [0.5, 0.5, 1.0, 1.0, 1.0])


@pytest.mark.parametrize(
    "points",
    [[(0.0, 0.0), (1.0, 0.9)], [(0.0, 0.0), (0.6, 0.5), (0.4, 0.7), (1.0, 1.0)], [(0.1, 0.0), (1.0, 1.0)]],
)
def test_malformed_curves_are_rejected(points: list[tuple[float, float]]) -> None:
    with pytest.raises(InvalidInput):
        RocCurve.from_points(points)


def test_csv_round_trip_keeps_breakpoints() -> None:
    curve = empirical_roc([0.1, 0.7, 0.2], [0.3, 0.9])
    assert RocCurve.from_csv(curve.to_csv()).breakpoints == curve.breakpoints
