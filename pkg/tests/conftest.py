# tests/conftest.py
from __future__ import annotations

import os
import random

import numpy as np
import pytest

from src.core.rankstats import clear_memory_cache
from tests.utils import make_experiment_config, make_gaussian_pair, make_train_config


# -------- Global deterministic seed --------
@pytest.fixture(autouse=True, scope="session")
def _seed_session():
    random.seed(1337)
    os.environ.setdefault("PYTHONHASHSEED", "0")
    yield


# -------- Null-table cache isolation --------
@pytest.fixture(autouse=True)
def _isolate_null_cache(tmp_path_factory, monkeypatch):
    """
    Point the on-disk null-table cache at a per-test temp dir and empty the in-memory one.

    `null_distribution` persists every table under `./.cache/nulltables` by default; a table
    left there by an older checkout would be served to the suite instead of being recomputed.
    Tests that exercise the cache itself set `RANKTEST_CACHE_DIR` inside the test body.
    """
    monkeypatch.setenv("RANKTEST_CACHE_DIR", str(tmp_path_factory.mktemp("nulltables")))
    monkeypatch.delenv("RANKTEST_NO_CACHE", raising=False)
    clear_memory_cache()
    yield
    clear_memory_cache()


# -------- Data fixtures --------
@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240607)


@pytest.fixture
def gaussian_pair():
    """Factory: (x, y) Gaussian samples with a location shift along every coordinate."""
    return make_gaussian_pair


@pytest.fixture
def train_config():
    def _factory(**overrides):
        return make_train_config(**overrides)

    return _factory


@pytest.fixture
def experiment_config():
    """Factory for a tiny, fast experiment config (overridable)."""

    def _factory(**overrides):
        return make_experiment_config(**overrides)

    return _factory
