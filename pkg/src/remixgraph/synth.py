"""Seeded synthetic remix-network generator.

Grows a lineage network design by design: each newcomer picks one or
two parents among the existing designs by preferential attachment
(weight = remix count + 1), inherits parent tags with a configurable
probability, and pads with fresh tags from a fixed pool. Parents always
precede children, so the result is acyclic by construction.

All randomness flows through :class:`~remixgraph.rng.DeterministicRNG`
(a pinned PCG64 stream), so a config reproduces the same network
byte-for-byte on any platform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Design, LineageGraph, RemixGraphError
from .rng import MAX_SEED, DeterministicRNG

CREATED_AT_BASE = 1_600_000_000  # arbitrary fixed epoch; children get later stamps
CREATED_AT_STEP = 60


class InvalidConfigError(RemixGraphError):
    """A generator parameter is out of range."""


@dataclass(frozen=True)
class SynthConfig:
    """Generator parameters; validation happens at construction."""

    n: int
    p_multi: float
    tag_pool: int
    tags_per_design: int
    p_inherit: float
    seed: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidConfigError("n must be at least 1")
        if not 0.0 <= self.p_multi <= 1.0:
            raise InvalidConfigError("p_multi must be in [0, 1]")
        if not 0.0 <= self.p_inherit <= 1.0:
            raise InvalidConfigError("p_inherit must be in [0, 1]")
        if self.tag_pool < 1:
            raise InvalidConfigError("tag_pool must be positive")
        if self.tags_per_design < 1:
            raise InvalidConfigError("tags_per_design must be positive")
        if not 0 <= self.seed <= MAX_SEED:
            raise InvalidConfigError("seed must fit in 64 unsigned bits")


def generate(config: SynthConfig) -> LineageGraph:
    """Generate a lineage graph per ``config``; deterministic given the seed.

    Random draws per design, in order: parent count (all but the first
    design), weighted parent picks with rejection for distinctness, one
    inherit coin per tag of the sorted parent-tag union, then fresh-tag
    picks until ``tags_per_design`` tags are held or the pool runs out.
    """
    rng = DeterministicRNG(config.seed)
    id_width = len(str(config.n))
    ids = [f"d{i:0{id_width}d}" for i in range(1, config.n + 1)]
    tag_width = len(str(config.tag_pool - 1)) if config.tag_pool > 1 else 1
    pool = [f"tag{j:0{tag_width}d}" for j in range(config.tag_pool)]

    remix_count = np.zeros(config.n, dtype=np.int64)
    tag_sets: list[frozenset[str]] = []
    graph = LineageGraph()

    for i in range(config.n):
        if i == 0:
            parents: tuple[int, ...] = ()
        else:
            want = 2 if rng.random() < config.p_multi else 1
            take = min(want, i)
            cumulative = np.cumsum(remix_count[:i] + 1)
            first = rng.weighted_index(cumulative)
            if take == 2:
                second = first
                while second == first:
                    second = rng.weighted_index(cumulative)
                parents = (first, second)
            else:
                parents = (first,)
            for p in parents:
                remix_count[p] += 1

        tags: set[str] = set()
        if parents:
            union = sorted(frozenset().union(*(tag_sets[p] for p in parents)))
            for tag in union:
                if rng.random() < config.p_inherit:
                    tags.add(tag)
        while len(tags) < config.tags_per_design and len(tags) < config.tag_pool:
            candidate = pool[rng.randrange(config.tag_pool)]
            if candidate not in tags:
                tags.add(candidate)
        tag_sets.append(frozenset(tags))

        graph.add_design(
            Design(
                id=ids[i],
                title=f"Design {ids[i]}",
                author=f"maker{i % 53:02d}",
                created_at=float(CREATED_AT_BASE + CREATED_AT_STEP * i),
                tags=frozenset(tags),
                parent_ids=tuple(ids[p] for p in parents),
            )
        )
    return graph
