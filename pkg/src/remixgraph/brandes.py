"""Shortest-path counting kernels over a CSR view of the lineage graph.

The betweenness accumulation follows Brandes (2001), "A faster algorithm
for betweenness centrality", with per-source predecessor lists recorded
during the BFS so the backward pass touches each shortest-path DAG edge
exactly once. Kernels are numba-compiled and release the GIL, so source
vertices can be partitioned across threads.

Determinism: sources are split into fixed-size chunks regardless of the
worker count and the per-chunk partial sums are merged in chunk order,
so results are bit-identical for 1, 2, or any number of workers.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from numba import njit

from .model import LineageGraph

CHUNK_SIZE = 512


def graph_index(graph: LineageGraph) -> tuple[list[str], dict[str, int]]:
    """Stable node numbering: ids sorted, index = rank."""
    ids = graph.ids()
    return ids, {design_id: i for i, design_id in enumerate(ids)}


def build_csr(
    graph: LineageGraph, orientation: str, index: dict[str, int] | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Adjacency in CSR form under the requested orientation.

    ``undirected`` keeps one arc per direction for every stored edge;
    ``directed`` orients arcs parent->child, the direction of influence.
    """
    if orientation not in ("undirected", "directed"):
        raise ValueError(f"orientation must be 'undirected' or 'directed', got {orientation!r}")
    if index is None:
        _, index = graph_index(graph)
    n = len(index)
    degree = np.zeros(n, dtype=np.int64)
    arcs = []
    for child, parent in graph.edges():
        c, p = index[child], index[parent]
        if orientation == "undirected":
            arcs.append((c, p))
            arcs.append((p, c))
        else:
            arcs.append((p, c))
    for src, _ in arcs:
        degree[src] += 1
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(degree, out=indptr[1:])
    indices = np.empty(len(arcs), dtype=np.int32)
    fill = indptr[:-1].copy()
    for src, dst in arcs:
        indices[fill[src]] = dst
        fill[src] += 1
    return indptr, indices


@njit(cache=True, nogil=True)
def _brandes_chunk(n, indptr, indices, s_lo, s_hi):  # pragma: no cover - compiled
    m = indices.shape[0]
    cb = np.zeros(n, np.float64)
    dist = np.empty(n, np.int32)
    sigma = np.empty(n, np.float64)
    delta = np.empty(n, np.float64)
    order = np.empty(n, np.int32)
    pred_head = np.empty(n, np.int32)
    pred_node = np.empty(max(m, 1), np.int32)
    pred_next = np.empty(max(m, 1), np.int32)
    for s in range(s_lo, s_hi):
        dist[:] = -1
        sigma[:] = 0.0
        delta[:] = 0.0
        pred_head[:] = -1
        next_slot = 0
        head = 0
        tail = 0
        dist[s] = 0
        sigma[s] = 1.0
        order[tail] = s
        tail += 1
        while head < tail:
            v = order[head]
            head += 1
            dv1 = dist[v] + 1
            sv = sigma[v]
            for e in range(indptr[v], indptr[v + 1]):
                w = indices[e]
                if dist[w] < 0:
                    dist[w] = dv1
                    order[tail] = w
                    tail += 1
                if dist[w] == dv1:
                    sigma[w] += sv
                    pred_node[next_slot] = v
                    pred_next[next_slot] = pred_head[w]
                    pred_head[w] = next_slot
                    next_slot += 1
        for i in range(tail - 1, 0, -1):
            w = order[i]
            coeff = (1.0 + delta[w]) / sigma[w]
            e = pred_head[w]
            while e >= 0:
                v = pred_node[e]
                delta[v] += sigma[v] * coeff
                e = pred_next[e]
            cb[w] += delta[w]
    return cb


@njit(cache=True, nogil=True)
def _bfs_distances(n, indptr, indices, source):  # pragma: no cover - compiled
    dist = np.full(n, -1, np.int32)
    queue = np.empty(n, np.int32)
    head = 0
    tail = 0
    dist[source] = 0
    queue[tail] = source
    tail += 1
    while head < tail:
        v = queue[head]
        head += 1
        dv1 = dist[v] + 1
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            if dist[w] < 0:
                dist[w] = dv1
                queue[tail] = w
                tail += 1
    return dist


@njit(cache=True, nogil=True)
def _max_eccentricity(n, indptr, indices, members, m_lo, m_hi):  # pragma: no cover
    best = 0
    dist = np.empty(n, np.int32)
    queue = np.empty(n, np.int32)
    for i in range(m_lo, m_hi):
        source = members[i]
        dist[:] = -1
        head = 0
        tail = 0
        dist[source] = 0
        queue[tail] = source
        tail += 1
        ecc = 0
        while head < tail:
            v = queue[head]
            head += 1
            dv1 = dist[v] + 1
            for e in range(indptr[v], indptr[v + 1]):
                w = indices[e]
                if dist[w] < 0:
                    dist[w] = dv1
                    if dv1 > ecc:
                        ecc = dv1
                    queue[tail] = w
                    tail += 1
        if ecc > best:
            best = ecc
    return best


def resolve_workers(workers: int | None) -> int:
    if workers is None:
        workers = os.cpu_count() or 1
    if workers < 1:
        raise ValueError("worker count must be positive")
    return workers


def _chunks(count: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + CHUNK_SIZE, count)) for lo in range(0, count, CHUNK_SIZE)]


def betweenness_counts(
    indptr: np.ndarray, indices: np.ndarray, n: int, workers: int | None = None
) -> np.ndarray:
    """Ordered-pair betweenness sums for every node (no normalization)."""
    if n == 0:
        return np.zeros(0, np.float64)
    workers = resolve_workers(workers)
    spans = _chunks(n)
    if workers == 1 or len(spans) == 1:
        parts = [_brandes_chunk(n, indptr, indices, lo, hi) for lo, hi in spans]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_brandes_chunk, n, indptr, indices, lo, hi) for lo, hi in spans]
            parts = [f.result() for f in futures]
    total = np.zeros(n, np.float64)
    for part in parts:  # fixed merge order keeps float sums reproducible
        total += part
    return total


def bfs_distances(indptr: np.ndarray, indices: np.ndarray, n: int, source: int) -> np.ndarray:
    """Hop distances from ``source``; -1 marks unreachable nodes."""
    return _bfs_distances(n, indptr, indices, source)


def component_diameter(
    indptr: np.ndarray,
    indices: np.ndarray,
    n: int,
    members: np.ndarray,
    workers: int | None = None,
) -> int:
    """Exact diameter (max eccentricity) over the given member nodes."""
    if len(members) == 0:
        return 0
    workers = resolve_workers(workers)
    spans = _chunks(len(members))
    if workers == 1 or len(spans) == 1:
        parts = [_max_eccentricity(n, indptr, indices, members, lo, hi) for lo, hi in spans]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_max_eccentricity, n, indptr, indices, members, lo, hi)
                for lo, hi in spans
            ]
            parts = [f.result() for f in futures]
    return int(max(parts))
