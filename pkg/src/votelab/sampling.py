"""Deterministic chunked Monte Carlo driving and interval helpers.

Sampling runs are split into fixed-size chunks; chunk k draws from
``default_rng([seed, k])`` and reductions are integer sums, so results are
bit-identical for any worker count and schedule.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from math import sqrt

import numpy as np

CHUNK = 1 << 16
Z95 = 1.959963984540054


def run_chunks(counter, slots: int, samples: int, seed: int, *, workers: int = 1,
               chunk: int = CHUNK) -> np.ndarray:
    """Sum of ``counter(rng, size)`` over all chunks; shape (slots,), int64.

    ``counter`` must return nonnegative integer counts and draw a fixed
    amount of randomness per requested size.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if seed is None or int(seed) < 0:
        raise ValueError("seed must be a nonnegative integer")
    seed = int(seed)
    tasks = [(k, min(chunk, samples - k * chunk))
             for k in range((samples + chunk - 1) // chunk)]

    def one(task):
        k, size = task
        out = np.asarray(counter(np.random.default_rng([seed, k]), size), dtype=np.int64)
        if out.shape != (slots,):
            raise ValueError(f"counter returned shape {out.shape}, expected ({slots},)")
        return out

    total = np.zeros(slots, np.int64)
    if workers <= 1:
        for task in tasks:
            total += one(task)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for out in pool.map(one, tasks):
                total += out
    return total


def wilson_half_width(successes: int, trials: int, z: float = Z95) -> float:
    """Half-width of the Wilson score interval for a Bernoulli proportion."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    p = successes / trials
    denom = 1.0 + z * z / trials
    return z * sqrt(p * (1.0 - p) / trials + z * z / (4.0 * trials * trials)) / denom


def normal_half_width(total: int, total_sq: int, count: int, z: float = Z95) -> float:
    """Half-width of the normal-approximation interval for a mean of
    bounded integer observations with the given sum and sum of squares."""
    if count < 2:
        return float("inf")
    var = (total_sq - total * total / count) / (count - 1)
    return z * sqrt(max(var, 0.0) / count)
