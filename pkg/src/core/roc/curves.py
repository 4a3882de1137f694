# src/core/roc/curves.py
"""
Empirical ROC curves, AUC and distances to the diagonal.

Convention: the *positive* sample is the one expected to score higher. A curve plots
TPR (positive mass above a threshold) against FPR (negative mass above it) as the
threshold sweeps the distinct pooled scores from the top; collinear breakpoints are
dropped, so tied positive/negative groups give one diagonal-direction segment.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

import numpy as np
import numpy.typing as npt
from scipy.stats import rankdata

from src.core.errors import InvalidInput

RocMetric = Literal["l1", "sup"]


@dataclass(frozen=True)
class RocCurve:
    """Monotone piecewise-linear curve in [0, 1]² from (0, 0) to (1, 1)."""

    fpr: npt.NDArray[np.float64] = field(repr=False)
    tpr: npt.NDArray[np.float64] = field(repr=False)

    def __post_init__(self) -> None:
        if self.fpr.shape != self.tpr.shape or self.fpr.ndim != 1 or self.fpr.size < 2:
            raise InvalidInput("ROC breakpoints must be two equal-length 1-d arrays with at least 2 points")
        if self.fpr[0] != 0.0 or self.tpr[0] != 0.0 or self.fpr[-1] != 1.0 or self.tpr[-1] != 1.0:
            raise InvalidInput("ROC curve must start at (0, 0) and end at (1, 1)")
        if np.any(np.diff(self.fpr) < 0) or np.any(np.diff(self.tpr) < 0):
            raise InvalidInput("ROC breakpoints must be nondecreasing in both coordinates")
        if np.any((self.fpr < 0) | (self.fpr > 1) | (self.tpr < 0) | (self.tpr > 1)):
            raise InvalidInput("ROC coordinates must lie in [0, 1]")
        self.fpr.setflags(write=False)
        self.tpr.setflags(write=False)

    @classmethod
    def from_points(cls, points: list[tuple[float, float]]) -> RocCurve:
        arr = np.asarray(points, dtype=np.float64)
        return cls(fpr=arr[:, 0].copy(), tpr=arr[:, 1].copy())

    @classmethod
    def diagonal(cls) -> RocCurve:
        return cls(fpr=np.array([0.0, 1.0]), tpr=np.array([0.0, 1.0]))

    @property
    def breakpoints(self) -> list[tuple[float, float]]:
        return [(float(a), float(b)) for a, b in zip(self.fpr, self.tpr, strict=True)]

    def evaluate(self, alpha: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """ROC(α) by linear interpolation; on a vertical segment the top value is returned."""
        a = np.clip(np.asarray(alpha, dtype=np.float64), 0.0, 1.0)
        i = np.searchsorted(self.fpr, a, side="right") - 1
        i = np.clip(i, 0, self.fpr.size - 2)
        x0, x1 = self.fpr[i], self.fpr[i + 1]
        y0, y1 = self.tpr[i], self.tpr[i + 1]
        width = x1 - x0
        frac = np.divide(a - x0, width, out=np.ones_like(a), where=width > 0)
        out = np.where(a >= 1.0, 1.0, y0 + np.clip(frac, 0.0, 1.0) * (y1 - y0))
        return np.asarray(out, dtype=np.float64)

    def __call__(self, alpha: npt.ArrayLike) -> npt.NDArray[np.float64]:
        return self.evaluate(alpha)

    def reflect(self) -> RocCurve:
        """The curve obtained by swapping the roles of the two samples."""
        return RocCurve(fpr=self.tpr.copy(), tpr=self.fpr.copy())

    # -------- CSV --------

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["fpr", "tpr"])
        for a, b in self.breakpoints:
            writer.writerow([repr(a), repr(b)])
        return buf.getvalue()

    def write_csv(self, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_csv(), encoding="utf-8")
        return path

    @classmethod
    def from_csv(cls, text: str) -> RocCurve:
        rows = list(csv.reader(io.StringIO(text)))
        if rows and rows[0] == ["fpr", "tpr"]:
            rows = rows[1:]
        return cls.from_points([(float(a), float(b)) for a, b in rows])


def _as_sample(values: npt.ArrayLike, name: str) -> npt.NDArray[np.float64]:
    arr = np.asarray(values, dtype=np.float64).reshape(-1)
    if arr.size == 0:
        raise InvalidInput(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput(f"{name} contains non-finite values")
    return arr


def _drop_collinear(fp: npt.NDArray[np.int64], tp: npt.NDArray[np.int64]) -> tuple[npt.NDArray[np.int64], npt.NDArray[np.int64]]:
    """Remove interior breakpoints lying on the segment joining their neighbours (exact integer test)."""
    keep = [0]
    for k in range(1, fp.size - 1):
        j = keep[-1]
        dx1, dy1 = fp[k] - fp[j], tp[k] - tp[j]
        dx2, dy2 = fp[k + 1] - fp[k], tp[k + 1] - tp[k]
        if dx1 * dy2 - dy1 * dx2 != 0:
            keep.append(k)
    keep.append(fp.size - 1)
    idx = np.asarray(keep)
    return fp[idx], tp[idx]


def empirical_roc(neg_scores: npt.ArrayLike, pos_scores: npt.ArrayLike) -> RocCurve:
    """Broken line through the jump points of the empirical ROC step curve."""
    neg = _as_sample(neg_scores, "negative sample")
    pos = _as_sample(pos_scores, "positive sample")
    n, m = pos.size, neg.size

    scores = np.concatenate([pos, neg])
    labels = np.concatenate([np.ones(n, dtype=np.int64), np.zeros(m, dtype=np.int64)])
    order = np.argsort(-scores, kind="stable")
    s, lab = scores[order], labels[order]
    tp = np.cumsum(lab)
    fp = np.cumsum(1 - lab)
    ends = np.flatnonzero(np.concatenate([s[1:] != s[:-1], [True]]))
    fp_c = np.concatenate([[0], fp[ends]]).astype(np.int64)
    tp_c = np.concatenate([[0], tp[ends]]).astype(np.int64)
    fp_c, tp_c = _drop_collinear(fp_c, tp_c)
    return RocCurve(fpr=fp_c / float(m), tpr=tp_c / float(n))


def concordant_pairs(neg_scores: npt.ArrayLike, pos_scores: npt.ArrayLike) -> float:
    """Σᵢⱼ 1{yⱼ < xᵢ} + ½·1{yⱼ = xᵢ}; an integer for tie-free samples."""
    pos = _as_sample(pos_scores, "positive sample")
    neg = _as_sample(neg_scores, "negative sample")
    n = pos.size
    ranks = rankdata(np.concatenate([pos, neg]), method="average")[:n]
    return float(np.sum(ranks) - n * (n + 1) / 2.0)


def auc_pairwise(neg_scores: npt.ArrayLike, pos_scores: npt.ArrayLike) -> float:
    """Rate of concordant (positive above negative) pairs, ties counted ½."""
    neg = _as_sample(neg_scores, "negative sample")
    pos = _as_sample(pos_scores, "positive sample")
    return concordant_pairs(neg, pos) / float(neg.size * pos.size)


def auc_from_curve(curve: RocCurve) -> float:
    """Trapezoidal area under the piecewise-linear curve."""
    return float(np.sum(np.diff(curve.fpr) * (curve.tpr[1:] + curve.tpr[:-1]) / 2.0))


def _segment_abs_integral(width: npt.NDArray[np.float64], g0: npt.NDArray[np.float64], g1: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    same = g0 * g1 >= 0
    abs_sum = np.abs(g0) + np.abs(g1)
    crossing = np.divide(g0**2 + g1**2, 2.0 * abs_sum, out=np.zeros_like(abs_sum), where=abs_sum > 0)
    return np.asarray(width * np.where(same, abs_sum / 2.0, crossing), dtype=np.float64)


def roc_distance(curve: RocCurve, metric: RocMetric = "sup") -> float:
    """
    Distance of the curve to the main diagonal.

    - ``l1``:  ∫₀¹ |ROC(α) − α| dα
    - ``sup``: sup_α |ROC(α) − α| (attained at a breakpoint)
    """
    gap = curve.tpr - curve.fpr
    if metric == "sup":
        return float(np.max(np.abs(gap)))
    if metric == "l1":
        width = np.diff(curve.fpr)
        return float(np.sum(_segment_abs_integral(width, gap[:-1], gap[1:])))
    raise InvalidInput(f"unknown ROC metric {metric!r}; expected 'l1' or 'sup'")


__all__ = [
    "RocMetric",
    "RocCurve",
    "empirical_roc",
    "concordant_pairs",
    "auc_pairwise",
    "auc_from_curve",
    "roc_distance",
]
