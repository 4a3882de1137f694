# src/core/utils/serialize.py
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import fields, is_dataclass
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel


def to_primitive(x: Any) -> Any:
    """Recursively convert models, dataclasses and numpy values to JSON-safe primitives."""
    if isinstance(x, Mapping):
        return {str(k): to_primitive(v) for k, v in x.items()}

    # list/tuple handled explicitly to keep types stable
    if isinstance(x, list):
        return [to_primitive(v) for v in x]
    if isinstance(x, tuple):
        return tuple(to_primitive(v) for v in x)

    if isinstance(x, BaseModel):
        return x.model_dump(mode="json")

    if isinstance(x, np.ndarray):
        return [to_primitive(v) for v in x.tolist()]
    if isinstance(x, np.generic):
        return x.item()

    if isinstance(x, Path):
        return str(x)

    # Field by field rather than dataclasses.asdict(): asdict deep-copies non-dataclass
    # fields (numpy arrays, pydantic models) as-is instead of converting them.
    if is_dataclass(x) and not isinstance(x, type):
        return {f.name: to_primitive(getattr(x, f.name)) for f in fields(x) if not f.name.startswith("_")}

    return x
