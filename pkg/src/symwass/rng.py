"""Seeded, splittable random streams.

Every stream is a Philox-4x64 counter-based generator keyed through
``numpy.random.SeedSequence(seed, spawn_key=path)``. A replication that
draws from ``substream(seed, "bound", n, k)`` sees the same numbers no
matter which process runs it or in which order, so parallel runs are
bit-identical to serial ones.
"""

from __future__ import annotations

import zlib

import numpy as np



def _key(part) -> int:
    if isinstance(part, (int, np.integer)):
        return int(part)
    return zlib.crc32(str(part).encode("utf-8"))


def substream(seed: int, *path) -> np.random.Generator:
    if int(seed) < 0 or int(seed) >= 2**64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(_key(p) for p in path))
    return np.random.Generator(np.random.Philox(ss))


def as_generator(seed) -> np.random.Generator:
    """Accept either an integer seed or an existing generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return substream(seed)
