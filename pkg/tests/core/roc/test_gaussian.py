# tests/core/roc/test_gaussian.py
from __future__ import annotations

import numpy as np
import pytest

from src.core.errors import InvalidInput, ModelError
from src.core.roc import GaussianOracle, auc_from_curve, binormal_auc, gaussian_roc_star

_ALPHAS = np.linspace(0.01, 0.99, 99)


def test_no_shift_gives_the_diagonal() -> None:
    oracle = GaussianOracle(delta=np.zeros(3), gamma=np.eye(3))
    np.testing.assert_allclose(gaussian_roc_star(oracle, _ALPHAS), _ALPHAS, atol=1e-12)
    assert binormal_auc(oracle) == pytest.approx(0.5)


def test_unit_shift_in_one_dimension_at_one_half() -> None:
    oracle = GaussianOracle(delta=np.array([1.0]), gamma=np.array([[1.0]]))
    assert float(gaussian_roc_star(oracle, 0.5)) == pytest.approx(0.841345, abs=1e-6)


def test_optimal_curve_is_concave_and_above_the_diagonal() -> None:
    gamma = np.array([[2.0, -0.5], [-0.5, 1.0]])
    oracle = GaussianOracle(delta=np.array([0.4, 0.2]), gamma=gamma)
    roc = gaussian_roc_star(oracle, _ALPHAS)
    assert np.all(roc >= _ALPHAS)
    assert np.all(np.diff(roc, 2) <= 1e-12)


def test_direction_solves_the_covariance_system() -> None:
    gamma = np.array([[2.0, 0.3], [0.3, 1.0]])
    oracle = GaussianOracle(delta=np.array([1.0, -1.0]), gamma=gamma)
    np.testing.assert_allclose(gamma @ oracle.direction, [1.0, -1.0])
    assert oracle.separation == pytest.approx(float(np.array([1.0, -1.0]) @ np.linalg.solve(gamma, [1.0, -1.0])))


def test_curve_area_matches_the_binormal_auc() -> None:
    oracle = GaussianOracle(delta=np.array([0.8, 0.0]), gamma=np.eye(2))
    assert auc_from_curve(oracle.as_curve()) == pytest.approx(binormal_auc(oracle), abs=1e-4)


def test_alpha_must_be_interior() -> None:
    oracle = GaussianOracle(delta=np.ones(1), gamma=np.eye(1))
    with pytest.raises(InvalidInput):
        gaussian_roc_star(oracle, [0.0, 0.5])


def test_non_positive_definite_covariance_is_a_model_error() -> None:
    with pytest.raises(ModelError):
        GaussianOracle(delta=np.ones(2), gamma=np.array([[1.0, 2.0], [2.0, 1.0]]))


def test_shape_mismatch_is_invalid_input() -> None:
    with pytest.raises(InvalidInput):
        GaussianOracle(delta=np.ones(3), gamma=np.eye(2))
