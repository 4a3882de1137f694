# src/core/baselines/depth.py
"""
Depth-based rank test: random-direction Tukey depth w.r.t. a reference part of the
larger sample, followed by a two-sided linear rank test on the depth values.
"""

from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt

from src.core.errors import InvalidInput
from src.core.rankstats.generators import MWW, ScoreGenerator
from src.core.rankstats.null_table import MethodRequest
from src.core.ranker.models import Array, as_matrix
from src.core.rng import make_rng
from src.core.twostage.ranking import rank_test_on_scores
from src.schemas.models import DepthConfig, TestReport

logger = logging.getLogger(__name__)


def depth_directions(d: int, cfg: DepthConfig) -> Array:
    """
    Unit directions (K, d). In d = 1 the single direction +1 is exact; otherwise K normalized
    Gaussian rows drawn row by row, so the first K₁ rows for K₂ > K₁ repeat the K₁ draw.
    """
    if d == 1:
        return np.ones((1, 1))
    raw = make_rng(cfg.seed, "tukey-directions", d).standard_normal((cfg.directions, d))
    norms = np.linalg.norm(raw, axis=1, keepdims=True)
    return np.asarray(raw / norms, dtype=np.float64)


def tukey_depths(points: npt.ArrayLike, reference: npt.ArrayLike, cfg: DepthConfig | None = None) -> Array:
    """
    Approximate halfspace depth of each point: the minimum over directions u of
    min(#{⟨u,z⟩ ≤ ⟨u,x⟩}, #{⟨u,z⟩ ≥ ⟨u,x⟩}) / |reference|.
    """
    cfg = cfg or DepthConfig()
    pts = as_matrix(points, "points")
    ref = as_matrix(reference, "reference")
    if pts.shape[1] != ref.shape[1]:
        raise InvalidInput(f"points and reference must share a dimension, got {pts.shape[1]} and {ref.shape[1]}")
    dirs = depth_directions(ref.shape[1], cfg)
    ref_proj = np.sort(ref @ dirs.T, axis=0)
    pts_proj = pts @ dirs.T
    depth = np.full(pts.shape[0], ref.shape[0], dtype=np.int64)
    for k in range(dirs.shape[0]):
        below = np.searchsorted(ref_proj[:, k], pts_proj[:, k], side="right")
        above = ref.shape[0] - np.searchsorted(ref_proj[:, k], pts_proj[:, k], side="left")
        depth = np.minimum(depth, np.minimum(below, above))
    return depth / ref.shape[0]


def tukey_depth(x: npt.ArrayLike, reference: npt.ArrayLike, cfg: DepthConfig | None = None) -> float:
    point = np.asarray(x, dtype=np.float64).reshape(1, -1)
    return float(tukey_depths(point, reference, cfg)[0])


def split_reference(sample: Array, cfg: DepthConfig) -> tuple[Array, Array]:
    """(reference, remainder) with ⌊fraction·size⌋ reference rows, on the seeded stream."""
    k = int(np.floor(cfg.reference_fraction * sample.shape[0]))
    if k < 1 or k >= sample.shape[0]:
        raise InvalidInput(
            f"reference_fraction {cfg.reference_fraction} leaves an empty part of a sample of size {sample.shape[0]}"
        )
    perm = make_rng(cfg.seed, "tukey-reference").permutation(sample.shape[0])
    return sample[np.sort(perm[:k])], sample[np.sort(perm[k:])]


def tukey_depth_test(
    x: npt.ArrayLike,
    y: npt.ArrayLike,
    phi: ScoreGenerator = MWW,
    alpha: float = 0.05,
    cfg: DepthConfig | None = None,
    quantile_method: MethodRequest = "auto",
) -> TestReport:
    """
    Reference = ``reference_fraction`` of the larger sample (X on ties); the rest of that
    sample and all of the other one are scored by depth and rank-tested two-sided.
    """
    cfg = cfg or DepthConfig()
    xs, ys = as_matrix(x, "X"), as_matrix(y, "Y")
    if xs.shape[1] != ys.shape[1]:
        raise InvalidInput(f"X and Y must share a dimension, got {xs.shape[1]} and {ys.shape[1]}")
    if xs.shape[0] >= ys.shape[0]:
        reference, xs = split_reference(xs, cfg)
        n_ref, m_ref = reference.shape[0], 0
    else:
        reference, ys = split_reference(ys, cfg)
        n_ref, m_ref = 0, reference.shape[0]
    dx = tukey_depths(xs, reference, cfg)
    dy = tukey_depths(ys, reference, cfg)
    logger.debug("tukey depths: mean X=%.4f mean Y=%.4f over %d directions", dx.mean(), dy.mean(), cfg.directions)
    report = rank_test_on_scores(dx, dy, phi, alpha, method_name="tukey", sided="two-sided", quantile_method=quantile_method)
    return report.model_copy(
        update={
            "n_train": n_ref,
            "m_train": m_ref,
            "seed": cfg.seed,
            "diagnostics": {**report.diagnostics, "directions": float(1 if xs.shape[1] == 1 else cfg.directions)},
        }
    )


__all__ = ["depth_directions", "tukey_depths", "tukey_depth", "split_reference", "tukey_depth_test"]
