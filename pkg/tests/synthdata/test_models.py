# tests/synthdata/test_models.py
from __future__ import annotations

import numpy as np
import pytest
from pydantic import ValidationError

from src.core.errors import InvalidInput
from src.core.rng import PRNG_NAME
from src.schemas.models import ModelSpec
from src.synthdata import CauchyDistribution, LogNormalDistribution, generate, model_distributions

ALL_VARIANTS = [
    ModelSpec(variant="L1minus", d=4, epsilon=0.0),
    ModelSpec(variant="S1", d=5, epsilon=0.0),
    ModelSpec(variant="S2", d=5, epsilon=0.0),
    ModelSpec(variant="T1", epsilon=0.0),
    ModelSpec(variant="T2", epsilon=0.0),
    ModelSpec(variant="T3", d=5, epsilon=0.0),
]


@pytest.mark.parametrize("spec", ALL_VARIANTS, ids=lambda s: s.variant)
def test_null_models_share_one_distribution(spec: ModelSpec) -> None:
    x_law, y_law = model_distributions(spec)
    assert x_law is y_law


@pytest.mark.parametrize("spec", ALL_VARIANTS, ids=lambda s: s.variant)
def test_alternatives_use_distinct_laws(spec: ModelSpec) -> None:
    x_law, y_law = model_distributions(spec.model_copy(update={"epsilon": 0.2}))
    assert x_law is not y_law
    assert x_law.dim == y_law.dim == spec.dim


def test_variant_defaults() -> None:
    assert ModelSpec(variant="T1").dim == 3
    assert ModelSpec(variant="S1").beta == 0.2
    assert ModelSpec(variant="S2").beta == 0.3
    assert ModelSpec(variant="L1minus").dim == 6
    with pytest.raises(ValidationError):
        ModelSpec(variant="L1minus", d=5)
    with pytest.raises(ValidationError):
        ModelSpec(variant="T1", d=4)


def test_generation_is_seed_deterministic() -> None:
    spec = ModelSpec(variant="T1", epsilon=0.5)
    x1, y1 = generate(spec, 50, 40, seed=12)
    x2, y2 = generate(spec, 50, 40, seed=12)
    np.testing.assert_array_equal(x1.values, x2.values)
    np.testing.assert_array_equal(y1.values, y2.values)
    x3, _ = generate(spec, 50, 40, seed=13)
    assert not np.array_equal(x1.values, x3.values)


def test_roles_use_independent_streams() -> None:
    spec = ModelSpec(variant="S1", d=4, epsilon=0.0)
    x, y = generate(spec, 30, 30, seed=1)
    assert not np.array_equal(x.values, y.values)
    # the X stream does not depend on m
    x_other, _ = generate(spec, 30, 7, seed=1)
    np.testing.assert_array_equal(x.values, x_other.values)


def test_sample_records_provenance_and_is_read_only() -> None:
    spec = ModelSpec(variant="L1minus", d=4, epsilon=0.1)
    x, y = generate(spec, 5, 6, seed=3)
    assert (x.role, y.role) == ("X", "Y")
    assert (x.n, x.d, y.n) == (5, 4, 6)
    assert x.seed == 3 and x.prng == PRNG_NAME and x.spec == spec
    assert not x.values.flags.writeable
    assert np.asarray(x).shape == (5, 4)


def test_empty_sizes_are_rejected() -> None:
    with pytest.raises(InvalidInput):
        generate(ModelSpec(variant="T1"), 0, 5, seed=0)


def test_location_shift_of_l1minus() -> None:
    spec = ModelSpec(variant="L1minus", d=4, epsilon=0.1)
    n = 100_000
    x, y = generate(spec, n, n, seed=7)
    diff = x.values.mean(axis=0) - y.values.mean(axis=0)
    se = np.sqrt(2.0 * np.diag(np.cov(y.values, rowvar=False)) / n)
    assert np.all(np.abs(diff - 0.05) <= 3 * se)


@pytest.mark.parametrize("variant", ["S1", "S2"])
def test_scale_models_reproduce_their_covariance(variant: str) -> None:
    spec = ModelSpec(variant=variant, d=5, epsilon=0.3)
    n = 100_000
    x, y = generate(spec, n, n, seed=2)
    beta = spec.beta
    for sample, c in ((x, beta + 0.3), (y, beta)):
        lag = np.abs(np.subtract.outer(np.arange(5), np.arange(5)))
        target = c**lag if variant == "S1" else np.where(lag == 0, 1.0, c)
        assert np.max(np.abs(np.cov(sample.values, rowvar=False) - target)) <= 5 / np.sqrt(n)


def test_cauchy_null_medians_are_centered() -> None:
    x, y = generate(ModelSpec(variant="T1", epsilon=0.0), 20_001, 20_001, seed=4)
    medians = np.concatenate([np.median(x.values, axis=0), np.median(y.values, axis=0)])
    assert np.all(np.abs(medians) < 0.05)
    assert np.all(np.isfinite(x.values))


def test_cauchy_shift_moves_the_first_two_coordinates() -> None:
    x_law, _ = model_distributions(ModelSpec(variant="T1", epsilon=2.0))
    assert isinstance(x_law, CauchyDistribution)
    np.testing.assert_array_equal(x_law.location, [2.0, 2.0, 0.0])


@pytest.mark.parametrize("variant", ["T2", "T3"])
def test_log_normal_models_are_positive(variant: str) -> None:
    spec = ModelSpec(variant=variant, d=4, epsilon=0.2)
    x_law, _ = model_distributions(spec)
    assert isinstance(x_law, LogNormalDistribution)
    x, y = generate(spec, 200, 200, seed=0)
    assert np.all(x.values > 0) and np.all(y.values > 0)
