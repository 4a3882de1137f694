# src/core/rankstats/__init__.py
"""Linear rank statistics, their pivotal null tables, asymptotic means and quantile bounds."""

from .generators import MWW, GeneratorKind, ScoreGenerator
from .statistics import RankStatistic, RankVector, centered_from_ranks, linear_rank_statistic, midranks, mww_statistic, positive_ranks
from .null_table import (
    DEFAULT_EXACT_BUDGET,
    DEFAULT_MC_DRAWS,
    MethodRequest,
    NullMethod,
    NullTable,
    exceeds,
    lower_quantile,
    null_distribution,
    null_quantile,
    p_value,
    resolve_method,
    subset_count,
    tabulate,
    total_variation,
)
from .cache import clear_memory_cache, read_null_table, write_null_table
from .asymptotics import asymptotic_mean, bound_constant, quantile_upper_bound

__all__ = [
    "MWW",
    "GeneratorKind",
    "ScoreGenerator",
    "RankStatistic",
    "RankVector",
    "midranks",
    "positive_ranks",
    "linear_rank_statistic",
    "mww_statistic",
    "centered_from_ranks",
    "DEFAULT_EXACT_BUDGET",
    "DEFAULT_MC_DRAWS",
    "MethodRequest",
    "NullMethod",
    "NullTable",
    "null_distribution",
    "null_quantile",
    "lower_quantile",
    "p_value",
    "exceeds",
    "resolve_method",
    "subset_count",
    "tabulate",
    "total_variation",
    "read_null_table",
    "write_null_table",
    "clear_memory_cache",
    "asymptotic_mean",
    "bound_constant",
    "quantile_upper_bound",
]
