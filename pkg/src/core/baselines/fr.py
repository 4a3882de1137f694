# src/core/baselines/fr.py
"""
Friedman–Rafsky runs test: cross-sample edges of the Euclidean minimum spanning tree.

The tree depends only on the pooled points, so it is built once and each permutation only
recounts the edges whose endpoints carry different labels. Few cross edges mean the
samples cluster apart, hence the lower-tail rejection region.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
import numpy.typing as npt
from scipy.spatial.distance import cdist

from src.core.baselines.permutation import BoolArray, PooledStatistic, permutation_test
from src.core.errors import InvalidInput
from src.core.ranker.models import Array, as_matrix
from src.schemas.models import PermutationScheme, TestReport

EdgeArray = npt.NDArray[np.intp]


def minimum_spanning_tree(points: npt.ArrayLike) -> EdgeArray:
    """
    Prim's algorithm on the dense distance matrix, O(N²). Returns (N−1, 2) edges (parent, child).

    Equal distances, zero-length ones included, go to the lowest vertex index.
    """
    z = as_matrix(points, "points")
    size = z.shape[0]
    if size < 2:
        raise InvalidInput(f"a spanning tree needs at least 2 points, got {size}")
    dist = cdist(z, z)
    in_tree = np.zeros(size, dtype=bool)
    in_tree[0] = True
    best = dist[0].copy()
    parent = np.zeros(size, dtype=np.intp)
    edges = np.empty((size - 1, 2), dtype=np.intp)
    for k in range(size - 1):
        j = int(np.argmin(np.where(in_tree, np.inf, best)))
        edges[k] = (parent[j], j)
        in_tree[j] = True
        closer = ~in_tree & (dist[j] < best)
        best[closer] = dist[j][closer]
        parent[closer] = j
    return edges


@dataclass(frozen=True)
class CrossEdgeStatistic(PooledStatistic):
    name: str = "fr"

    def prepare(self, pooled: Array) -> Any:
        return minimum_spanning_tree(pooled)

    def evaluate(self, prepared: Any, labels: BoolArray) -> float:
        edges: EdgeArray = prepared
        return float(np.count_nonzero(labels[edges[:, 0]] != labels[edges[:, 1]]))


def fr_statistic(x: npt.ArrayLike, y: npt.ArrayLike) -> int:
    """Number of MST edges joining an X point to a Y point; in [1, N − 1]."""
    return int(CrossEdgeStatistic()(x, y))


def fr_test(x: npt.ArrayLike, y: npt.ArrayLike, alpha: float, scheme: PermutationScheme | None = None) -> TestReport:
    return permutation_test(CrossEdgeStatistic(), x, y, alpha, scheme or PermutationScheme(), "lower")


__all__ = ["minimum_spanning_tree", "CrossEdgeStatistic", "fr_statistic", "fr_test"]
