# src/core/rankstats/cache.py
"""
In-memory and on-disk cache for null tables.

File layout (one table per file, under ``runtime_flags.null_cache_dir()``)::

    <sha256(key)[:16]>.ntab

File format (text, floats written with ``float.hex`` so a reload is bit-exact)::

    ranktest-null-table v1
    n <int>
    m <int>
    phi <descriptor>
    method exact|montecarlo
    seed <int>
    draws <int>
    size <int>
    <value hex> <probability hex>     (``size`` lines, values ascending)
"""

from __future__ import annotations

import logging
import os
import tempfile
import threading
from collections import OrderedDict
from hashlib import sha256
from pathlib import Path

import numpy as np

from src.core import runtime_flags
from src.core.errors import InvalidInput
from src.core.rankstats.generators import ScoreGenerator
from src.core.rankstats.null_table import NullMethod, NullTable, table_key, tabulate

logger = logging.getLogger(__name__)

_MAGIC = "ranktest-null-table v1"

MEMORY_CAP = 64

_memory: OrderedDict[tuple[int, int, str, str, int, int], NullTable] = OrderedDict()
_lock = threading.Lock()


def cache_path(key: tuple[int, int, str, str, int, int], base_dir: Path) -> Path:
    digest = sha256(repr(key).encode("utf-8")).hexdigest()[:16]
    return base_dir / f"{digest}.ntab"


def write_null_table(table: NullTable, path: Path) -> Path:
    """Persist ``table``; the write is atomic (temp file + rename)."""
    lines = [
        _MAGIC,
        f"n {table.n}",
        f"m {table.m}",
        f"phi {table.generator.descriptor}",
        f"method {table.method}",
        f"seed {table.seed}",
        f"draws {table.draws}",
        f"size {table.values.size}",
    ]
    lines.extend(f"{float(v).hex()} {float(p).hex()}" for v, p in zip(table.values, table.probabilities, strict=True))
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".ntab-", suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)
    return path


def read_null_table(path: Path) -> NullTable:
    """Load a table written by ``write_null_table``."""
    text = path.read_text(encoding="utf-8").splitlines()
    if not text or text[0] != _MAGIC:
        raise InvalidInput(f"{path}: not a null-table file")
    header: dict[str, str] = {}
    for line in text[1:8]:
        name, _, value = line.partition(" ")
        header[name] = value
    try:
        size = int(header["size"])
        method = header["method"]
        if method not in ("exact", "montecarlo"):
            raise ValueError(f"unknown method {method!r}")
        rows = [line.split() for line in text[8 : 8 + size]]
        values = np.array([float.fromhex(r[0]) for r in rows], dtype=np.float64)
        probabilities = np.array([float.fromhex(r[1]) for r in rows], dtype=np.float64)
        resolved: NullMethod = "exact" if method == "exact" else "montecarlo"
        return NullTable(
            n=int(header["n"]),
            m=int(header["m"]),
            generator=ScoreGenerator.parse(header["phi"]),
            method=resolved,
            draws=int(header["draws"]),
            seed=int(header["seed"]),
            values=values,
            probabilities=probabilities,
        )
    except (KeyError, IndexError, ValueError) as e:
        raise InvalidInput(f"{path}: malformed null-table file ({e})") from e


def _remember(key: tuple[int, int, str, str, int, int], table: NullTable) -> None:
    # least recently used tables leave first
    with _lock:
        _memory[key] = table
        _memory.move_to_end(key)
        while len(_memory) > MEMORY_CAP:
            _memory.popitem(last=False)


def get_or_tabulate(n: int, m: int, phi: ScoreGenerator, method: NullMethod, *, draws: int, seed: int) -> NullTable:
    """Return the cached table for the key, tabulating (and persisting) it on a miss."""
    key = table_key(n, m, phi, method, draws, seed)
    with _lock:
        hit = _memory.get(key)
        if hit is not None:
            _memory.move_to_end(key)
    if hit is not None:
        return hit

    path: Path | None = None
    if runtime_flags.cache_enabled():
        path = cache_path(key, runtime_flags.null_cache_dir())
        if path.exists():
            try:
                table = read_null_table(path)
                logger.debug("null table cache hit %s", path)
                _remember(key, table)
                return table
            except InvalidInput:
                logger.warning("ignoring unreadable null-table cache file %s", path)

    table = tabulate(n, m, phi, method, draws=draws, seed=seed)
    if path is not None:
        try:
            write_null_table(table, path)
            logger.debug("null table cached at %s", path)
        except OSError as e:
            logger.warning("could not persist null table to %s: %s", path, e)
    _remember(key, table)
    return table


def clear_memory_cache() -> None:
    with _lock:
        _memory.clear()


__all__ = ["cache_path", "write_null_table", "read_null_table", "get_or_tabulate", "clear_memory_cache"]
