"""Deterministic seed fan-out for repeated and swept runs.

Seeds derive from a stable hash of the master seed and a set of labels, so
rows of a sweep are reproducible regardless of execution order or worker
count, and paired configurations can share randomness on purpose.
"""

from __future__ import annotations

import hashlib


def derive_seed(master_seed: int, *parts: int | str | float) -> int:
    """Map (master seed, labels) to a 31-bit simulation seed."""

    text = ":".join([str(int(master_seed))] + [repr(p) for p in parts])
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "big") & 0x7FFFFFFF
