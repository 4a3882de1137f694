# tests/core/ranker/test_models.py
from __future__ import annotations

import numpy as np
import pytest
from scipy.stats import rankdata

from src.core.errors import InvalidInput
from src.core.ranker import FeatureMap, FixedModel, LinearModel, MlpModel, Stump, StumpEnsemble, fit_feature_map, quadratic_features, score


def test_linear_score_is_the_inner_product() -> None:
    model = LinearModel(features=FeatureMap(dim_in=2), weights=np.array([1.0, 0.0]))
    assert score(model, [3.0, 7.0]) == 3.0


def test_single_stump_evaluation() -> None:
    model = StumpEnsemble(features=FeatureMap(dim_in=3), stumps=(Stump(feature=0, threshold=1.0, left=-1.0, right=1.0, weight=2.0),))
    assert score(model, [5.0, 0.0, 0.0]) == 2.0
    assert score(model, [0.5, 9.0, 9.0]) == -2.0


def test_zero_network_scores_zero_everywhere(rng: np.random.Generator) -> None:
    model = MlpModel(features=FeatureMap(dim_in=4), w1=np.zeros((3, 4)), b1=np.zeros(3), w2=np.zeros(3), b2=0.0)
    np.testing.assert_array_equal(model(rng.normal(size=(10, 4))), np.zeros(10))
    assert model.layer_sizes == (4, 3, 1)


def test_dimension_mismatch_is_invalid_input() -> None:
    model = LinearModel(features=FeatureMap(dim_in=2), weights=np.ones(2))
    with pytest.raises(InvalidInput):
        score(model, [1.0, 2.0, 3.0])
    with pytest.raises(InvalidInput):
        model.scores(np.ones((4, 3)))
    with pytest.raises(InvalidInput):
        score(model, np.ones((1, 2)))


def test_non_finite_rows_are_rejected() -> None:
    model = LinearModel(features=FeatureMap(dim_in=1), weights=np.ones(1))
    with pytest.raises(InvalidInput):
        model.scores([[np.inf]])


def test_weight_shape_is_checked_against_the_feature_map() -> None:
    with pytest.raises(InvalidInput):
        LinearModel(features=FeatureMap(dim_in=2, quadratic=True), weights=np.ones(2))


def test_quadratic_features_follow_upper_triangle_order() -> None:
    z = np.array([[1.0, 2.0, 3.0]])
    np.testing.assert_array_equal(quadratic_features(z), [[1, 2, 3, 1, 2, 3, 4, 6, 9]])
    assert FeatureMap(dim_in=3, quadratic=True).dim_out == 9


def test_feature_map_uses_training_statistics_only(rng: np.random.Generator) -> None:
    train = rng.normal(3.0, 2.0, size=(200, 2))
    train[:, 1] = 5.0  # constant column keeps scale 1
    fmap = fit_feature_map(train, standardize=True, augment_quadratic=False)
    z = fmap.transform(train)
    np.testing.assert_allclose(z[:, 0].mean(), 0.0, atol=1e-12)
    np.testing.assert_allclose(z[:, 0].std(), 1.0, atol=1e-12)
    np.testing.assert_array_equal(z[:, 1], 0.0)
    assert fmap.scale is not None and fmap.scale[1] == 1.0


def test_fixed_models_are_linear_models_with_a_label() -> None:
    model = FixedModel(features=FeatureMap(dim_in=2), weights=np.array([1.0, -1.0]), label="oracle:L1minus")
    assert isinstance(model, LinearModel)
    assert model.kind == "fixed"
    assert score(model, [2.0, 0.5]) == 1.5


def test_model_parameters_are_read_only() -> None:
    model = LinearModel(features=FeatureMap(dim_in=2), weights=np.ones(2))
    with pytest.raises(ValueError):
        model.weights[0] = 5.0


@pytest.mark.parametrize("c", [2.0**-3, 3.0, 2.0**10])
def test_positive_rescaling_keeps_the_ranking(rng: np.random.Generator, c: float) -> None:
    model = LinearModel(features=FeatureMap(dim_in=3), weights=np.array([0.7, -1.2, 0.4]), bias=0.3)
    pts = rng.normal(size=(40, 3))
    scaled = model.rescaled(c)
    np.testing.assert_allclose(scaled(pts), c * model(pts), rtol=1e-12, atol=1e-12 * c)
    np.testing.assert_array_equal(rankdata(scaled(pts)), rankdata(model(pts)))
