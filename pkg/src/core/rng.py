# src/core/rng.py
"""
Seed derivation for every random draw in the package.

All randomness goes through ``make_rng``: a numpy ``Generator`` over the counter-based
``Philox`` bit generator, keyed by a ``SeedSequence`` built from the master seed plus a
path of integer/string keys (role, replication index, method name, ...). Distinct paths
give independent streams; the same path always gives the same stream, on any platform
numpy supports, regardless of how work is distributed across workers.
"""

from __future__ import annotations

from hashlib import sha256

import numpy as np

PRNG_NAME = "numpy.Philox(4x64-10)/SeedSequence"

SeedKey = int | str


def _key_to_int(key: SeedKey) -> int:
    if isinstance(key, bool):
        return int(key)
    if isinstance(key, int):
        if key < 0:
            raise ValueError(f"seed keys must be non-negative, got {key}")
        return key
    # strings hash to a stable 64-bit value (never the salted builtin hash())
    return int.from_bytes(sha256(key.encode("utf-8")).digest()[:8], "big")


def seed_sequence(master: int, *keys: SeedKey) -> np.random.SeedSequence:
    """SeedSequence for ``master`` and the stream path ``keys``."""
    if master < 0:
        raise ValueError(f"master seed must be non-negative, got {master}")
    return np.random.SeedSequence(entropy=master, spawn_key=tuple(_key_to_int(k) for k in keys))


def make_rng(master: int, *keys: SeedKey) -> np.random.Generator:
    """Independent, reproducible Philox generator for the stream ``(master, *keys)``."""
    return np.random.Generator(np.random.Philox(seed_sequence(master, *keys)))


def derive_seed(master: int, *keys: SeedKey) -> int:
    """A 63-bit integer seed for the stream ``(master, *keys)``; recorded in reports."""
    state = seed_sequence(master, *keys).generate_state(2, dtype=np.uint32)
    return int((int(state[0]) << 31) ^ int(state[1]))


__all__ = ["PRNG_NAME", "SeedKey", "seed_sequence", "make_rng", "derive_seed"]
