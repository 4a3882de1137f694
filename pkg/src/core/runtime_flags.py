# src/core/runtime_flags.py
"""
Environment flags read by library code, in a module with no heavy imports.

Flags are read on every call rather than cached at import, so a test (or a CLI run
that loaded a ``.env`` file) that changes the environment sees the change immediately.

- ``RANKTEST_CACHE_DIR``  directory for persisted null tables (default ``./.cache/nulltables``)
- ``RANKTEST_NO_CACHE``   truthy → never read or write the on-disk null-table cache
- ``RANKTEST_LOG_LEVEL``  logging level name used by the CLI (default ``WARNING``)
"""

from __future__ import annotations

import os
from pathlib import Path

_TRUTHY = {"1", "true", "yes", "on"}

DEFAULT_CACHE_DIR = Path(".cache") / "nulltables"


def is_truthy(value: str | None) -> bool:
    return (value or "").strip().lower() in _TRUTHY


def null_cache_dir() -> Path:
    """Directory holding persisted null tables."""
    raw = os.getenv("RANKTEST_CACHE_DIR", "").strip()
    return Path(raw) if raw else DEFAULT_CACHE_DIR


def cache_enabled() -> bool:
    """Whether the on-disk null-table cache may be used."""
    return not is_truthy(os.getenv("RANKTEST_NO_CACHE"))


def log_level() -> str:
    """Logging level name for CLI runs."""
    raw = os.getenv("RANKTEST_LOG_LEVEL", "").strip().upper()
    return raw if raw in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"} else "WARNING"
