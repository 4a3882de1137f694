# src/harness/config.py
"""
Experiment config files (``.toml`` or ``.json``) → validated ``ExperimentConfig``.

Environment overrides, applied after the file is parsed and before validation:

- ``RANKTEST_OUT``           output directory
- ``RANKTEST_WORKERS``       worker processes
- ``RANKTEST_REPLICATIONS``  Monte-Carlo replications B
- ``RANKTEST_FULL_SCALE``    truthy → pooled size N = 2000
"""

from __future__ import annotations

import json
import logging
import os

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib  # type: ignore[no-redef]
from collections.abc import Mapping
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from src.core.errors import ConfigError
from src.core.runtime_flags import is_truthy
from src.schemas.models import ExperimentConfig

logger = logging.getLogger(__name__)

FULL_SCALE_N = 2000


def _validation_message(err: ValidationError) -> str:
    parts = []
    for item in err.errors():
        loc = ".".join(str(p) for p in item.get("loc", ())) or "<root>"
        parts.append(f"{loc}: {item.get('msg', 'invalid')}")
    return "; ".join(parts)


class ConfigLoader:
    """Reads, overrides and validates experiment configs."""

    def __init__(self, environ: Mapping[str, str] | None = None) -> None:
        self._environ = environ

    def _getenv(self, name: str) -> str | None:
        if self._environ is not None:
            return self._environ.get(name)
        return os.getenv(name)

    def read(self, path: Path) -> dict[str, Any]:
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        try:
            text = path.read_text(encoding="utf-8")
            if path.suffix.lower() == ".toml":
                data: Any = tomllib.loads(text)
            elif path.suffix.lower() == ".json":
                data = json.loads(text)
            else:
                raise ConfigError(f"unsupported config format {path.suffix!r} (expected .toml or .json)")
        except (OSError, tomllib.TOMLDecodeError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config {path}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"config {path} must hold a table/object at the top level")
        return data

    def overrides(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        out_dir = (self._getenv("RANKTEST_OUT") or "").strip()
        if out_dir:
            out["out_dir"] = out_dir
        for key, name in (("workers", "RANKTEST_WORKERS"), ("replications", "RANKTEST_REPLICATIONS")):
            raw = (self._getenv(name) or "").strip()
            if raw:
                try:
                    out[key] = int(raw)
                except ValueError as e:
                    raise ConfigError(f"{name} must be an integer, got {raw!r}") from e
        if is_truthy(self._getenv("RANKTEST_FULL_SCALE")):
            out["N"] = FULL_SCALE_N
        return out

    def validate(self, data: Mapping[str, Any]) -> ExperimentConfig:
        merged = {**data, **self.overrides()}
        try:
            return ExperimentConfig.model_validate(merged)
        except ValidationError as e:
            raise ConfigError(f"invalid experiment config: {_validation_message(e)}") from e

    def load(self, path: Path) -> ExperimentConfig:
        cfg = self.validate(self.read(path))
        logger.info("loaded experiment %r from %s (N=%d, B=%d)", cfg.name, path, cfg.N, cfg.replications)
        return cfg


def load_config(path: Path) -> ExperimentConfig:
    return ConfigLoader().load(path)


__all__ = ["FULL_SCALE_N", "ConfigLoader", "load_config"]
