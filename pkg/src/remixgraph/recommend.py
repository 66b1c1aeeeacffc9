"""Rank design pairs as combination candidates.

A good candidate pair is conceptually diverse (high Jaccard distance
between the two tag sets) and structurally separated (far apart in the
undirected lineage network). The combined score is the product of the
two components, so a pair failing either dimension scores near zero.
Pairs already related by lineage (ancestor/descendant) are excluded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import brandes
from .model import LineageGraph, StubDesignError
from .rng import DeterministicRNG


@dataclass(frozen=True)
class PairCandidate:
    """A scored (id_a, id_b) combination, canonically ordered id_a < id_b."""

    id_a: str
    id_b: str
    tag_distance: float
    structural_separation: float
    combined_score: float


def pair_tag_distance(graph: LineageGraph, a: str, b: str) -> float | None:
    """Jaccard distance between the two designs' own tag sets.

    None when the union is empty (two untagged designs say nothing
    about conceptual diversity).
    """
    design_a = graph.design(a)
    design_b = graph.design(b)
    if design_a.is_stub or design_b.is_stub:
        raise StubDesignError(f"tag distance undefined for stub designs: {a!r}, {b!r}")
    union = design_a.tags | design_b.tags
    if not union:
        return None
    return 1.0 - len(design_a.tags & design_b.tags) / len(union)


def structural_separation(graph: LineageGraph, a: str, b: str, cap: int) -> float:
    """Undirected hop distance scaled into [0, 1] by ``cap``.

    Distances at or beyond the cap, and disconnected pairs, score 1.0.
    """
    if cap < 1:
        raise ValueError("separation cap must be a positive integer")
    distance = graph.undirected_distance(a, b)
    if math.isinf(distance):
        return 1.0
    return min(distance, cap) / cap


def default_separation_cap(graph: LineageGraph, workers: int | None = None) -> int:
    """Diameter of the largest weakly connected component, at least 1."""
    components = graph.weakly_connected_components()
    if not components:
        return 1
    _, index = brandes.graph_index(graph)
    indptr, indices = brandes.build_csr(graph, "undirected", index)
    members = np.array([index[design_id] for design_id in components[0]], dtype=np.int32)
    diameter = brandes.component_diameter(indptr, indices, len(index), members, workers)
    return max(diameter, 1)


def _pair_from_rank(rank: int, count: int) -> tuple[int, int]:
    """Invert the row-major enumeration of pairs (i, j), i < j."""
    total = count * (count - 1) // 2
    remaining = total - rank  # pairs from this rank through the end, >= 1
    # row i starts a suffix triangle of t*(t-1)/2 pairs where t = count - i;
    # integer sqrt gives t up to rounding, the loops pin it exactly
    t = (1 + math.isqrt(8 * remaining - 7)) // 2
    while t * (t - 1) // 2 < remaining:
        t += 1
    while (t - 1) * (t - 2) // 2 >= remaining:
        t -= 1
    i = count - t
    j = i + 1 + (rank - (total - t * (t - 1) // 2))
    return i, j


def _sample_ranks(total: int, m: int, seed: int) -> list[int]:
    count = min(m, total)
    if count >= total:
        return list(range(total))
    if count * 2 >= total:
        # dense case: drawing the complement avoids coupon-collector stalls
        rng = DeterministicRNG(seed)
        excluded: set[int] = set()
        while len(excluded) < total - count:
            excluded.add(rng.randrange(total))
        return [rank for rank in range(total) if rank not in excluded]
    rng = DeterministicRNG(seed)
    chosen: set[int] = set()
    while len(chosen) < count:
        chosen.add(rng.randrange(total))
    return sorted(chosen)


def recommend(
    graph: LineageGraph,
    k: int,
    strategy: str = "exhaustive",
    samples: int | None = None,
    seed: int = 0,
    cap: int | None = None,
    workers: int | None = None,
) -> list[PairCandidate]:
    """Top-k combination candidates by combined score.

    ``exhaustive`` scans every unordered pair of non-stub designs, which
    is quadratic; ``sampled`` scores ``samples`` distinct pairs chosen
    uniformly with the given seed and reproduces the exhaustive result
    exactly once ``samples`` reaches the total pair count. Stub designs,
    lineage-related pairs, and pairs with undefined tag distance are
    skipped. Ties break by (id_a, id_b).
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if strategy not in ("exhaustive", "sampled"):
        raise ValueError(f"strategy must be 'exhaustive' or 'sampled', got {strategy!r}")
    if strategy == "sampled":
        if samples is None or samples < 1:
            raise ValueError("sampled strategy needs a positive sample count")
    graph.freeze()

    eligible = [design_id for design_id in graph.ids() if not graph.design(design_id).is_stub]
    count = len(eligible)
    total = count * (count - 1) // 2
    if total == 0:
        return []

    if strategy == "exhaustive":
        by_row: dict[int, list[int]] = {i: list(range(i + 1, count)) for i in range(count - 1)}
    else:
        by_row = {}
        for rank in _sample_ranks(total, samples or 0, seed):
            i, j = _pair_from_rank(rank, count)
            by_row.setdefault(i, []).append(j)

    if cap is None:
        cap = default_separation_cap(graph, workers)
    elif cap < 1:
        raise ValueError("separation cap must be a positive integer")

    _, index = brandes.graph_index(graph)
    indptr, indices = brandes.build_csr(graph, "undirected", index)
    n = len(index)

    candidates: list[PairCandidate] = []
    for i in sorted(by_row):
        id_a = eligible[i]
        survivors: list[tuple[str, float]] = []
        for j in by_row[i]:
            id_b = eligible[j]
            distance = pair_tag_distance(graph, id_a, id_b)
            if distance is None:
                continue
            if graph.is_ancestor_of(id_a, id_b) or graph.is_ancestor_of(id_b, id_a):
                continue
            survivors.append((id_b, distance))
        if not survivors:
            continue
        hops = brandes.bfs_distances(indptr, indices, n, index[id_a])
        for id_b, distance in survivors:
            d = int(hops[index[id_b]])
            separation = 1.0 if d < 0 else min(d, cap) / cap
            candidates.append(
                PairCandidate(
                    id_a=id_a,
                    id_b=id_b,
                    tag_distance=distance,
                    structural_separation=separation,
                    combined_score=distance * separation,
                )
            )

    candidates.sort(key=lambda c: (-c.combined_score, c.id_a, c.id_b))
    return candidates[:k]
