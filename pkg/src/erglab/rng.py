"""Splittable random streams and deterministic block-parallel execution.

Every Monte-Carlo replica (a block of paths) owns a generator derived from
``(master_seed, block_index)``, so results never depend on how many worker
threads are used.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

DEFAULT_BLOCK = 1024


def stream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for the spawn key ``key`` under ``seed``."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))


def as_seed(rng) -> int:
    """Derive a 64-bit master seed from a generator, an int, or None."""
    if rng is None:
        return int(np.random.SeedSequence().entropy % 2**64)
    if isinstance(rng, (int, np.integer)):
        return int(rng)
    return int(rng.integers(0, 2**63))


def block_sizes(total: int, block: int = DEFAULT_BLOCK) -> list[int]:
    full, rest = divmod(int(total), block)
    return [block] * full + ([rest] if rest else [])


def run_blocks(fn, total, seed, *, block=DEFAULT_BLOCK, threads=1, key=()):
    """Run ``fn(size, rng)`` over fixed-size blocks and concatenate the results.

    ``fn`` must return a numpy array or a tuple of arrays. Block ``i`` always
    receives ``stream(seed, *key, i)`` so the output is identical for any
    ``threads``.
    """
    sizes = block_sizes(total, block)
    jobs = [(size, stream(seed, *key, i)) for i, size in enumerate(sizes)]
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda job: fn(*job), jobs))
    else:
        parts = [fn(*job) for job in jobs]
    if not parts:
        raise ValueError("total must be positive")
    if isinstance(parts[0], tuple):
        return tuple(np.concatenate(col) for col in zip(*parts))
    return np.concatenate(parts)
