# src/harness/__init__.py
"""Config-driven Monte-Carlo power studies: config loading, the replication runner and output files."""

from .config import FULL_SCALE_N, ConfigLoader, load_config
from .runner import CellOutcome, cell_keys, model_specs, replication_seed, run_experiment, run_replication, summarize
from .outputs import ALL_FORMATS, OutputFormat, emit_outputs

__all__ = [
    "FULL_SCALE_N",
    "ConfigLoader",
    "load_config",
    "CellOutcome",
    "cell_keys",
    "model_specs",
    "replication_seed",
    "run_experiment",
    "run_replication",
    "summarize",
    "ALL_FORMATS",
    "OutputFormat",
    "emit_outputs",
]
