# src/core/rankstats/null_table.py
"""
Null distributions of the centered statistic Ŵ^φ_{n,m}/n − ∫φ.

Under H₀ the positive ranks form a uniformly random n-subset of {1, ..., N}, so the
distribution depends only on (n, m, φ) and can be tabulated once:

- ``exact``       enumerate all C(N, n) subsets (allowed up to ``budget`` subsets)
- ``montecarlo``  ``draws`` uniform random subsets from a seeded Philox stream

Tables are merged into sorted distinct support points and cached in memory and on disk
(see ``src.core.rankstats.cache``).
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import numpy.typing as npt
from scipy.special import comb

from src.core.errors import BudgetExceeded, InvalidInput
from src.core.rankstats.generators import ScoreGenerator
from src.core.rng import make_rng

logger = logging.getLogger(__name__)

NullMethod = Literal["exact", "montecarlo"]
MethodRequest = Literal["auto", "exact", "montecarlo"]

DEFAULT_EXACT_BUDGET = 2_000_000
DEFAULT_MC_DRAWS = 200_000

# support points closer than this (relative to max(1, |v|)) are the same value
VALUE_TOL = 1e-12
# probability comparisons
PROB_TOL = 1e-12

_ENUM_CHUNK = 65_536
_MC_CHUNK = 8_192


@dataclass(frozen=True)
class NullTable:
    """Distribution of the centered statistic for sample sizes (n, m) and generator φ."""

    n: int
    m: int
    generator: ScoreGenerator
    method: NullMethod
    draws: int
    seed: int
    values: npt.NDArray[np.float64] = field(repr=False)
    probabilities: npt.NDArray[np.float64] = field(repr=False)

    def __post_init__(self) -> None:
        self.values.setflags(write=False)
        self.probabilities.setflags(write=False)

    @property
    def key(self) -> tuple[int, int, str, str, int, int]:
        return table_key(self.n, self.m, self.generator, self.method, self.draws, self.seed)

    @property
    def support(self) -> list[tuple[float, float]]:
        return [(float(v), float(p)) for v, p in zip(self.values, self.probabilities, strict=True)]

    def cdf(self, t: float) -> float:
        """P{centered ≤ t}."""
        tol = VALUE_TOL * max(1.0, abs(t))
        return float(np.sum(self.probabilities[self.values <= t + tol]))

    def sf(self, t: float) -> float:
        """P{centered ≥ t}."""
        tol = VALUE_TOL * max(1.0, abs(t))
        return float(min(1.0, np.sum(self.probabilities[self.values >= t - tol])))

    @property
    def max_point_mass(self) -> float:
        return float(np.max(self.probabilities))

    def mean(self) -> float:
        return float(np.dot(self.values, self.probabilities))


def table_key(n: int, m: int, phi: ScoreGenerator, method: str, draws: int, seed: int) -> tuple[int, int, str, str, int, int]:
    # exact tables do not depend on draws/seed
    if method == "exact":
        return (n, m, phi.descriptor, method, 0, 0)
    return (n, m, phi.descriptor, method, draws, seed)


def _merge_support(samples: npt.NDArray[np.float64], weights: npt.NDArray[np.float64]) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """Sort values and fold near-equal neighbours into one support point."""
    order = np.argsort(samples, kind="stable")
    vals = samples[order]
    wts = weights[order]
    if vals.size == 0:
        return vals, wts
    gaps = np.diff(vals) > VALUE_TOL * np.maximum(1.0, np.abs(vals[1:]))
    starts = np.concatenate([[0], np.flatnonzero(gaps) + 1])
    merged_vals = vals[starts]
    merged_wts = np.add.reduceat(wts, starts)
    return merged_vals.astype(np.float64), merged_wts.astype(np.float64)


def subset_count(n: int, m: int) -> int:
    return int(comb(n + m, n, exact=True))


def _rank_scores(n: int, m: int, phi: ScoreGenerator) -> npt.NDArray[np.float64]:
    N = n + m
    return phi(np.arange(1, N + 1, dtype=np.float64) / (N + 1.0))


def _enumerate_sums(n: int, m: int, phi: ScoreGenerator) -> Iterator[npt.NDArray[np.float64]]:
    """Raw statistic of every n-subset of ranks, in chunks (lexicographic subset order)."""
    N = n + m
    scores = _rank_scores(n, m, phi)
    # enumerate the smaller side; the positive sum is the total minus the complement's sum
    k = min(n, m)
    total = float(np.sum(scores))
    combos = itertools.combinations(range(N), k)
    while True:
        chunk = list(itertools.islice(combos, _ENUM_CHUNK))
        if not chunk:
            return
        idx = np.fromiter(itertools.chain.from_iterable(chunk), dtype=np.intp, count=len(chunk) * k).reshape(-1, k)
        sums = np.sum(scores[idx], axis=1)
        yield sums if k == n else total - sums


def _montecarlo_sums(n: int, m: int, phi: ScoreGenerator, draws: int, seed: int) -> Iterator[npt.NDArray[np.float64]]:
    """Raw statistic of ``draws`` uniform n-subsets; chunking is fixed so draw i is always the same subset."""
    N = n + m
    scores = _rank_scores(n, m, phi)
    rng = make_rng(seed, "null-table", n, m)
    done = 0
    while done < draws:
        size = min(_MC_CHUNK, draws - done)
        keys = rng.random((size, N))
        idx = np.argpartition(keys, n - 1, axis=1)[:, :n]
        yield np.sum(scores[idx], axis=1)
        done += size


def tabulate(n: int, m: int, phi: ScoreGenerator, method: NullMethod, *, draws: int = DEFAULT_MC_DRAWS, seed: int = 0) -> NullTable:
    """Build a table without consulting any cache."""
    if method == "exact":
        chunks = list(_enumerate_sums(n, m, phi))
        draws_used, seed_used = 0, 0
    else:
        if draws < 1:
            raise InvalidInput(f"draws must be >= 1, got {draws}")
        chunks = list(_montecarlo_sums(n, m, phi, draws, seed))
        draws_used, seed_used = draws, seed

    raw = np.concatenate(chunks)
    centered = raw / n - phi.integral
    values, counts = _merge_support(centered, np.ones(centered.size))
    probabilities = counts / float(centered.size)
    return NullTable(
        n=n,
        m=m,
        generator=phi,
        method=method,
        draws=draws_used,
        seed=seed_used,
        values=values,
        probabilities=probabilities,
    )


def resolve_method(n: int, m: int, method: MethodRequest, budget: int) -> NullMethod:
    """Pick the tabulation method; ``auto`` enumerates when C(N, n) ≤ budget."""
    count = subset_count(n, m)
    if method == "exact":
        if count > budget:
            raise BudgetExceeded(f"exact enumeration needs C({n + m}, {n}) = {count} subsets, budget is {budget}")
        return "exact"
    if method == "montecarlo":
        return "montecarlo"
    if count <= budget:
        return "exact"
    logger.info("C(%d, %d) = %d exceeds budget %d; tabulating by Monte Carlo", n + m, n, count, budget)
    return "montecarlo"


def null_distribution(
    n: int,
    m: int,
    phi: ScoreGenerator,
    method: MethodRequest = "auto",
    budget: int = DEFAULT_EXACT_BUDGET,
    seed: int = 0,
    *,
    draws: int = DEFAULT_MC_DRAWS,
    use_cache: bool = True,
) -> NullTable:
    """
    Null table of the centered statistic for (n, m, φ).

    Raises:
      InvalidInput: n < 1 or m < 1.
      BudgetExceeded: ``method="exact"`` with more than ``budget`` subsets.
    """
    if n < 1 or m < 1:
        raise InvalidInput(f"sample sizes must be >= 1, got n={n}, m={m}")
    resolved = resolve_method(n, m, method, budget)
    if not use_cache:
        return tabulate(n, m, phi, resolved, draws=draws, seed=seed)

    from src.core.rankstats.cache import get_or_tabulate

    return get_or_tabulate(n, m, phi, resolved, draws=draws, seed=seed)


def _check_alpha(alpha: float) -> None:
    if not (0.0 < alpha < 1.0):
        raise InvalidInput(f"alpha must be in (0, 1), got {alpha}")


def null_quantile(table: NullTable, alpha: float) -> float:
    """Smallest t ≥ 0 with P{centered ≤ t} ≥ 1 − α under ``table``."""
    _check_alpha(alpha)
    target = 1.0 - alpha - PROB_TOL
    if table.cdf(0.0) >= target:
        return 0.0
    cum = np.cumsum(table.probabilities)
    ok = (table.values > 0.0) & (cum >= target)
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return float(table.values[-1])
    return float(table.values[hits[0]])


def lower_quantile(table: NullTable, alpha: float) -> float:
    """Largest support value t with P{centered ≤ t} ≤ α (−inf when none)."""
    _check_alpha(alpha)
    cum = np.cumsum(table.probabilities)
    hits = np.flatnonzero(cum <= alpha + PROB_TOL)
    if hits.size == 0:
        return float("-inf")
    return float(table.values[hits[-1]])


def p_value(table: NullTable, observed_centered: float) -> float:
    """One-sided upper-tail p-value P{centered ≥ observed}."""
    return table.sf(observed_centered)


def exceeds(statistic: float, threshold: float) -> bool:
    """``statistic > threshold`` up to floating summation noise."""
    return statistic > threshold + VALUE_TOL * max(1.0, abs(threshold))


def total_variation(a: NullTable, b: NullTable) -> float:
    """Total-variation distance between two tables on the union of their supports."""
    vals = np.concatenate([a.values, b.values])
    wts = np.concatenate([a.probabilities, -b.probabilities])
    _, diff = _merge_support(vals, wts)
    return float(0.5 * np.sum(np.abs(diff)))


__all__ = [
    "NullMethod",
    "MethodRequest",
    "DEFAULT_EXACT_BUDGET",
    "DEFAULT_MC_DRAWS",
    "NullTable",
    "table_key",
    "subset_count",
    "tabulate",
    "resolve_method",
    "null_distribution",
    "null_quantile",
    "lower_quantile",
    "p_value",
    "exceeds",
    "total_variation",
]
