"""Seeded, counter-based random streams with a fixed chunk layout.

Every Monte-Carlo estimator draws its samples in chunks of ``CHUNK`` points.
Chunk ``k`` of stream ``s`` under seed ``seed`` always comes from the same
Philox key, so results do not depend on how many threads consume the chunks.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

CHUNK = 1 << 15
THREADS_ENV = "PLURICAP_THREADS"

_MASK64 = (1 << 64) - 1


def generator(seed: int, chunk: int = 0, stream: int = 0) -> np.random.Generator:
    """Philox generator for one (seed, stream, chunk) cell."""
    key = np.array([int(seed) & _MASK64, ((int(stream) & 0xFFFFFFFF) << 32) | (int(chunk) & 0xFFFFFFFF)],
                   dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def thread_count(threads: int | None = None) -> int:
    if threads is not None:
        return max(1, int(threads))
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def chunk_sizes(n_samples: int) -> list[int]:
    n_samples = int(n_samples)
    full, rest = divmod(n_samples, CHUNK)
    return [CHUNK] * full + ([rest] if rest else [])


def map_chunks(fn, n_samples: int, seed: int, stream: int = 0, threads: int | None = None) -> list:
    """Apply ``fn(gen, size)`` to every chunk, returning results in chunk order."""
    sizes = chunk_sizes(n_samples)
    jobs = [(k, size) for k, size in enumerate(sizes)]

    def run(job):
        k, size = job
        return fn(generator(seed, k, stream), size)

    workers = thread_count(threads)
    if workers == 1 or len(jobs) == 1:
        return [run(job) for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, jobs))
