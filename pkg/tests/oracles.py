"""Independent reference implementations and fixture builders for tests.

Nothing here shares code with the package's algorithms: betweenness is
recomputed by naive all-pairs BFS path counting, independence by
element-wise membership enumeration, distances by dict-based BFS.
"""

from __future__ import annotations

import random
from collections import deque

from remixgraph.model import Design, LineageGraph


def graph_from_parents(parent_lists: dict[str, list[str]], tags: dict[str, set[str]] | None = None) -> LineageGraph:
    """Build a graph from {child: [parents]}; insertion in key order."""
    tags = tags or {}
    graph = LineageGraph()
    for design_id, parents in parent_lists.items():
        graph.add_design(
            Design(
                id=design_id,
                tags=frozenset(tags.get(design_id, set())),
                parent_ids=tuple(parents),
            )
        )
    return graph


def random_lineage_graph(rng: random.Random, n: int, p_multi: float = 0.3) -> LineageGraph:
    """Random DAG: each design after the first picks 1-2 earlier parents."""
    ids = [f"n{i:03d}" for i in range(n)]
    parent_lists: dict[str, list[str]] = {ids[0]: []}
    for i in range(1, n):
        count = 2 if (i >= 2 and rng.random() < p_multi) else 1
        parent_lists[ids[i]] = rng.sample(ids[:i], count)
    return graph_from_parents(parent_lists)


def undirected_adjacency(graph: LineageGraph) -> dict[str, list[str]]:
    adj: dict[str, list[str]] = {design_id: [] for design_id in graph.ids()}
    for child, parent in graph.edges():
        adj[child].append(parent)
        adj[parent].append(child)
    return adj


def directed_adjacency(graph: LineageGraph) -> dict[str, list[str]]:
    """Arcs parent -> child (direction of influence)."""
    adj: dict[str, list[str]] = {design_id: [] for design_id in graph.ids()}
    for child, parent in graph.edges():
        adj[parent].append(child)
    return adj


def bfs_levels(adj: dict[str, list[str]], source: str) -> tuple[dict[str, int], dict[str, int]]:
    """Hop distance and shortest-path count from one source."""
    dist = {source: 0}
    sigma = {source: 1}
    queue = deque([source])
    while queue:
        node = queue.popleft()
        for neighbor in adj[node]:
            if neighbor not in dist:
                dist[neighbor] = dist[node] + 1
                sigma[neighbor] = 0
                queue.append(neighbor)
            if dist[neighbor] == dist[node] + 1:
                sigma[neighbor] += sigma[node]
    return dist, sigma


def naive_betweenness(adj: dict[str, list[str]], directed: bool) -> dict[str, float]:
    """All-pairs BFS path counting: raw(v) = sum over (s,t) of the
    fraction of shortest s-t paths through v, unordered pairs for the
    undirected case."""
    nodes = list(adj)
    info = {source: bfs_levels(adj, source) for source in nodes}
    raw = dict.fromkeys(nodes, 0.0)
    for s in nodes:
        dist_s, sigma_s = info[s]
        for t in nodes:
            if t == s or t not in dist_s:
                continue
            for v in nodes:
                if v == s or v == t or v not in dist_s:
                    continue
                dist_v, sigma_v = info[v]
                if t in dist_v and dist_s[v] + dist_v[t] == dist_s[t]:
                    raw[v] += sigma_s[v] * sigma_v[t] / sigma_s[t]
    if not directed:
        raw = {v: value / 2.0 for v, value in raw.items()}
    return raw


def brute_independence(tag_sets: list[set[str]]) -> float | None:
    """Element-by-element enumeration of the intersection/union ratio."""
    union: set[str] = set()
    for tags in tag_sets:
        union |= tags
    if not union:
        return None
    common = [tag for tag in union if all(tag in tags for tags in tag_sets)]
    return 1.0 - len(common) / len(union)


def bfs_distance(adj: dict[str, list[str]], a: str, b: str) -> int | float:
    if a == b:
        return 0
    dist = {a: 0}
    queue = deque([a])
    while queue:
        node = queue.popleft()
        for neighbor in adj[node]:
            if neighbor not in dist:
                if neighbor == b:
                    return dist[node] + 1
                dist[neighbor] = dist[node] + 1
                queue.append(neighbor)
    return float("inf")


def reachable_up(graph: LineageGraph, start: str) -> set[str]:
    """Transitive parents by plain traversal over parents_of."""
    out: set[str] = set()
    stack = [start]
    while stack:
        node = stack.pop()
        for parent in graph.parents_of(node):
            if parent not in out:
                out.add(parent)
                stack.append(parent)
    return out
