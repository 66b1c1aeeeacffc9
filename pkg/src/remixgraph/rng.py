"""Deterministic random source for generators and samplers.

Draws raw uniform doubles from a PCG64 bit stream pinned by seed and
derives everything else (bounded integers, weighted picks) locally, so
the sequence depends only on the documented PCG64 output mapping and
never on platform defaults or library method internals. Identical seeds
give identical streams on every platform.
"""

from __future__ import annotations

import numpy as np

MAX_SEED = 2**64 - 1


class DeterministicRNG:
    """Uniform doubles from a seeded PCG64 stream plus integer helpers."""

    def __init__(self, seed: int) -> None:
        if not 0 <= seed <= MAX_SEED:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {seed}")
        self._gen = np.random.Generator(np.random.PCG64(seed))

    def random(self) -> float:
        """Next double in [0, 1)."""
        return float(self._gen.random())

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n); bias from the floor mapping is < 2**-52."""
        if n <= 0:
            raise ValueError("randrange needs a positive bound")
        return min(int(self.random() * n), n - 1)

    def weighted_index(self, cumulative: np.ndarray) -> int:
        """Index drawn proportionally to weights given their cumulative sums."""
        total = float(cumulative[-1])
        if total <= 0:
            raise ValueError("weights must have a positive total")
        u = self.random() * total
        return min(int(np.searchsorted(cumulative, u, side="right")), len(cumulative) - 1)
