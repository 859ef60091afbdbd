"""Monte Carlo sampling of the one-shot common-good game.

Statistical cross-check of the exact expected-utility formula: draw each
participant's disclosure independently from her profile probability,
score the realized outcome, and average. Fully determined by the seed
(and shard count); sharding derives per-shard seeds as seed + index and
merges moments in shard order, so the estimate is reproducible whether or
not shards run in parallel.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .access import AccessStructure
from .game import CommonGoodUtilities, Profile, check_profile


@dataclass(frozen=True)
class SimResult:
    means: tuple[float, ...]
    stderr: tuple[float, ...]  # sample standard deviation / sqrt(samples)
    samples: int
    seed: int


def _shard_moments(
    gamma: AccessStructure,
    u: CommonGoodUtilities,
    alpha: tuple[float, ...],
    count: int,
    seed: int,
) -> tuple[np.ndarray, np.ndarray]:
    """(sum, sum of squares) of per-participant utilities over count draws."""
    rng = np.random.default_rng(seed)
    n = gamma.n
    disclosed = rng.random((count, n)) < np.asarray(alpha)
    masks = disclosed @ (1 << np.arange(n))
    recovered = np.zeros(count, dtype=bool)
    for m in gamma.min_masks:
        recovered |= (masks & m) == m
    values = np.asarray(u.good_values)
    utilities = recovered[:, None] * values[None, :] - u.cost * disclosed
    return utilities.sum(axis=0), (utilities**2).sum(axis=0)


def simulate(
    gamma: AccessStructure,
    u: CommonGoodUtilities,
    alpha: Profile,
    samples: int,
    seed: int,
    shards: int = 1,
    max_workers: int = 1,
) -> SimResult:
    """Estimate each participant's expected utility under a mixed profile."""
    if samples < 1:
        raise ValueError("need at least one sample")
    if shards < 1 or shards > samples:
        raise ValueError("shard count must be in 1..samples")
    if u.n != gamma.n:
        raise ValueError(f"utilities cover {u.n} participants, structure has {gamma.n}")
    alpha = check_profile(alpha, gamma.n)

    base = samples // shards
    counts = [base + (1 if s < samples % shards else 0) for s in range(shards)]
    jobs = [(c, seed + idx) for idx, c in enumerate(counts) if c > 0]
    if max_workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            moments = list(
                pool.map(lambda j: _shard_moments(gamma, u, alpha, j[0], j[1]), jobs)
            )
    else:
        moments = [_shard_moments(gamma, u, alpha, c, s) for c, s in jobs]

    total = np.zeros(gamma.n)
    total_sq = np.zeros(gamma.n)
    for s, sq in moments:  # fixed shard order keeps the merge bit-exact
        total += s
        total_sq += sq

    means = total / samples
    if samples > 1:
        var = np.maximum(total_sq - samples * means**2, 0.0) / (samples - 1)
    else:
        var = np.zeros(gamma.n)
    stderr = np.sqrt(var / samples)
    return SimResult(
        means=tuple(float(v) for v in means),
        stderr=tuple(float(v) for v in stderr),
        samples=samples,
        seed=seed,
    )
