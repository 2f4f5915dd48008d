"""Deterministic random-number streams and the worker-pool helper.

Every randomized routine draws from a counter-based Philox stream keyed by
``(seed, stream index)``.  Results are therefore a pure function of the seed
and the task index, independent of scheduling, worker count, or platform.
"""

from __future__ import annotations

import hashlib
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

import numpy as np

T = TypeVar("T")

_MASK64 = (1 << 64) - 1


def derive_seed(*parts: int | str) -> int:
    """Fold a tuple of ints/strings into a stable 64-bit sub-seed.

    Uses BLAKE2b so the mapping is identical across platforms and runs.
    """
    h = hashlib.blake2b(digest_size=8)
    for part in parts:
        if isinstance(part, str):
            h.update(b"s" + part.encode("utf-8") + b"\x00")
        else:
            h.update(b"i" + int(part).to_bytes(16, "little", signed=True))
    return int.from_bytes(h.digest(), "little")


def stream_rng(seed: int, index: int = 0) -> np.random.Generator:
    """Return the Philox stream for ``(seed, index)``."""
    key = np.array([seed & _MASK64, index & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def thread_count() -> int:
    """Worker-pool size: the AERM_THREADS env var, default 1 (sequential)."""
    raw = os.environ.get("AERM_THREADS", "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def indexed_map(fn: Callable[[int], T], indices: Sequence[int],
                threads: int | None = None) -> list[T]:
    """Map ``fn`` over task indices, returning results in index order.

    Each task must derive all of its randomness from its own index, so the
    output is identical for every worker count.
    """
    n_workers = thread_count() if threads is None else max(1, threads)
    if n_workers == 1 or len(indices) <= 1:
        return [fn(i) for i in indices]
    with ThreadPoolExecutor(max_workers=n_workers) as pool:
        return list(pool.map(fn, indices))
