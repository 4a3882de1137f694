# src/core/twostage/split.py
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

from src.core.errors import InvalidInput
from src.core.ranker.models import Array, as_matrix
from src.core.rng import make_rng
from src.schemas.models import SplitConfig


class SplitSamples(NamedTuple):
    """Training halves (X′, Y′) and holdout halves (X″, Y″)."""

    x_train: Array
    y_train: Array
    x_test: Array
    y_test: Array

    @property
    def sizes(self) -> tuple[int, int, int, int]:
        return (self.x_train.shape[0], self.y_train.shape[0], self.x_test.shape[0], self.y_test.shape[0])


def train_size(total: int, fraction: float) -> int:
    # the epsilon absorbs products such as 0.29 * 100 = 28.999999999999996
    return int(math.floor(fraction * total + 1e-9))


def _split_one(sample: Array, fraction: float, seed: int, role: str) -> tuple[Array, Array]:
    k = train_size(sample.shape[0], fraction)
    perm = make_rng(seed, "split", role).permutation(sample.shape[0])
    return sample[np.sort(perm[:k])], sample[np.sort(perm[k:])]


def split_samples(x: npt.ArrayLike, y: npt.ArrayLike, cfg: SplitConfig) -> SplitSamples:
    """
    Stratified split: each sample is shuffled on its own seeded stream and cut at
    ⌊fraction·size⌋, so the positive share is the same in both halves.
    """
    xs = as_matrix(x, "X")
    ys = as_matrix(y, "Y")
    if xs.shape[0] < 2 or ys.shape[0] < 2:
        raise InvalidInput(f"each sample needs at least 2 observations to split, got n={xs.shape[0]}, m={ys.shape[0]}")
    x_train, x_test = _split_one(xs, cfg.train_fraction, cfg.seed, "X")
    y_train, y_test = _split_one(ys, cfg.train_fraction, cfg.seed, "Y")
    parts = SplitSamples(x_train, y_train, x_test, y_test)
    if min(parts.sizes) < 1:
        raise InvalidInput(f"split fraction {cfg.train_fraction} leaves an empty part: (n', m', n'', m'') = {parts.sizes}")
    return parts


__all__ = ["SplitSamples", "train_size", "split_samples"]
