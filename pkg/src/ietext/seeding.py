"""Deterministic derivation of per-task random generators.

One global seed drives every experiment; each subtask derives its own
child generator from ``(seed, task label, index)``.  The label is hashed
with CRC-32 (stable across runs and platforms, unlike ``hash``), so
reordering or parallelizing subtasks cannot change their streams.
"""

from __future__ import annotations

import zlib

import numpy as np


def derive_rng(seed: int, label: str, index: int = 0) -> np.random.Generator:
    """Child generator for subtask ``label``/``index`` of a global seed."""
    key = (zlib.crc32(label.encode("utf-8")), index)
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=key))
