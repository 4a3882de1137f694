# src/synthdata/export.py
"""
CSV files of samples: one row per observation, optional ``x1..xd`` header, and a
``<name>.meta.json`` sidecar recording the PRNG, seed and generating model.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from src.core.errors import InvalidInput
from src.core.ranker.models import Array, as_matrix
from src.synthdata.models import Sample


def sample_to_csv(values: Array, *, header: bool = True) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header:
        writer.writerow([f"x{j + 1}" for j in range(values.shape[1])])
    for row in values:
        writer.writerow([repr(float(v)) for v in row])
    return buf.getvalue()


def sidecar_path(path: Path) -> Path:
    return path.with_name(path.name + ".meta.json")


def sample_metadata(sample: Sample) -> dict[str, object]:
    return {
        "prng": sample.prng,
        "seed": sample.seed,
        "role": sample.role,
        "model": sample.spec.model_dump(mode="json"),
        "n": sample.n,
        "d": sample.d,
    }


def write_sample(sample: Sample, path: Path, *, header: bool = True) -> Path:
    """Write ``sample`` as CSV plus its metadata sidecar; returns the CSV path."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(sample_to_csv(sample.values, header=header), encoding="utf-8")
    sidecar_path(path).write_text(json.dumps(sample_metadata(sample), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def parse_sample_csv(text: str) -> Array:
    """Rows of floats; a first row that does not parse as numbers is taken as a header."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if rows:
        try:
            [float(c) for c in rows[0]]
        except ValueError:
            rows = rows[1:]
    if not rows:
        raise InvalidInput("CSV sample has no data rows")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise InvalidInput(f"CSV rows have differing lengths {sorted(widths)}")
    try:
        values = np.array([[float(c) for c in r] for r in rows], dtype=np.float64)
    except ValueError as e:
        raise InvalidInput(f"CSV sample contains a non-numeric value: {e}") from e
    return as_matrix(values, "CSV sample")


def read_sample(path: Path) -> Array:
    return parse_sample_csv(path.read_text(encoding="utf-8"))


__all__ = ["sample_to_csv", "sidecar_path", "sample_metadata", "write_sample", "parse_sample_csv", "read_sample"]
