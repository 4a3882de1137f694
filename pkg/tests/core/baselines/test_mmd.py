# tests/core/baselines/test_mmd.py
from __future__ import annotations

import math

import numpy as np
import pytest

from src.core.baselines import BANDWIDTH_GRID, MmdStatistic, median_bandwidth, mmd_test, mmd_unbiased, select_bandwidth
from src.core.errors import InvalidInput
from src.schemas.models import PermutationScheme


def test_coincident_points_give_zero() -> None:
    assert mmd_unbiased(np.zeros((2, 1)), np.zeros((2, 1)), 1.0) == pytest.approx(0.0)


def test_hand_evaluated_value_is_negative() -> None:
    x = np.array([[0.0], [2.0]])
    assert mmd_unbiased(x, x.copy(), 1.0) == pytest.approx(math.exp(-2) - 1)


def test_huge_bandwidth_flattens_the_statistic(gaussian_pair) -> None:
    x, y = gaussian_pair(n=10, m=12, d=2, shift=1.0)
    assert abs(mmd_unbiased(x, y, 1e6)) < 1e-9


def test_symmetry_and_rigid_motion_invariance(gaussian_pair) -> None:
    x, y = gaussian_pair(n=10, m=14, d=2, shift=0.7, seed=2)
    base = mmd_unbiased(x, y, 1.3)
    assert mmd_unbiased(y, x, 1.3) == pytest.approx(base)
    theta = 0.8
    rot = np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
    shift = np.array([4.0, -1.0])
    assert mmd_unbiased(x @ rot.T + shift, y @ rot.T + shift, 1.3) == pytest.approx(base)


def test_pooled_evaluation_matches_the_direct_formula(gaussian_pair) -> None:
    x, y = gaussian_pair(n=9, m=7, d=3, shift=0.5, seed=5)
    assert MmdStatistic(0.9)(x, y) == pytest.approx(mmd_unbiased(x, y, 0.9))


def test_small_samples_are_rejected() -> None:
    with pytest.raises(InvalidInput):
        mmd_unbiased(np.zeros((1, 1)), np.zeros((3, 1)), 1.0)
    with pytest.raises(InvalidInput):
        mmd_unbiased(np.zeros((3, 1)), np.zeros((3, 1)), 0.0)


def test_median_bandwidth() -> None:
    x = np.array([[0.0], [1.0]])
    y = np.array([[3.0]])
    # pooled distances 1, 3, 2
    assert median_bandwidth(x, y) == pytest.approx(2.0)
    assert median_bandwidth(np.ones((3, 2)), np.ones((2, 2))) == 1.0


def test_grid_selection_picks_a_grid_value(gaussian_pair) -> None:
    x, y = gaussian_pair(n=20, m=20, d=2, shift=1.0, seed=1)
    bw = select_bandwidth(x, y, seed=3, permutations=20)
    assert bw in BANDWIDTH_GRID


def test_mmd_test_detects_a_shift_and_reports_the_bandwidth(gaussian_pair) -> None:
    x, y = gaussian_pair(n=40, m=40, d=2, shift=1.5, seed=7)
    report = mmd_test(x, y, 0.05, PermutationScheme(b_perm=99, seed=1))
    assert report.method == "mmd"
    assert report.reject
    assert report.diagnostics["bandwidth"] == pytest.approx(median_bandwidth(x, y))
    assert (report.n_test, report.m_test) == (40, 40)


def test_grid_rule_tests_on_the_remaining_halves(gaussian_pair) -> None:
    x, y = gaussian_pair(n=21, m=20, d=2, shift=1.5, seed=7)
    report = mmd_test(x, y, 0.05, PermutationScheme(b_perm=19, seed=1), "grid")
    assert (report.n_train, report.m_train) == (10, 10)
    assert (report.n_test, report.m_test) == (11, 10)
    assert report.diagnostics["bandwidth"] in BANDWIDTH_GRID


def test_fixed_bandwidth_is_used_as_given(gaussian_pair) -> None:
    x, y = gaussian_pair(n=10, m=10, seed=3)
    assert mmd_test(x, y, 0.05, PermutationScheme(b_perm=9), 2.5).diagnostics["bandwidth"] == 2.5
