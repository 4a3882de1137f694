# src/core/baselines/__init__.py
"""Comparison tests: MMD, Energy and Friedman–Rafsky under permutation, and the Tukey-depth rank test."""

from .permutation import PooledStatistic, Tail, permutation_draws, permutation_pvalue, permutation_test, pool, tail_p_value
from .mmd import BANDWIDTH_GRID, BandwidthRule, MmdStatistic, gaussian_kernel, median_bandwidth, mmd_test, mmd_unbiased, select_bandwidth
from .energy import EnergyStatistic, energy_statistic, energy_test
from .fr import CrossEdgeStatistic, fr_statistic, fr_test, minimum_spanning_tree
from .depth import depth_directions, split_reference, tukey_depth, tukey_depth_test, tukey_depths

__all__ = [
    "PooledStatistic",
    "Tail",
    "permutation_draws",
    "permutation_pvalue",
    "permutation_test",
    "pool",
    "tail_p_value",
    "BANDWIDTH_GRID",
    "BandwidthRule",
    "MmdStatistic",
    "gaussian_kernel",
    "median_bandwidth",
    "mmd_test",
    "mmd_unbiased",
    "select_bandwidth",
    "EnergyStatistic",
    "energy_statistic",
    "energy_test",
    "CrossEdgeStatistic",
    "fr_statistic",
    "fr_test",
    "minimum_spanning_tree",
    "depth_directions",
    "split_reference",
    "tukey_depth",
    "tukey_depth_test",
    "tukey_depths",
]
