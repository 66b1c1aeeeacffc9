"""The two scoring dimensions for multi-parent designs, plus summaries.

Dimension one is normalized betweenness centrality over the whole
lineage network (stubs included as structural nodes). Dimension two is
the tag independence score of a design's parents: one minus the ratio
of the intersection to the union of all parent tag sets, i.e. a Jaccard
distance generalized to any number of parents. Designs whose parents
are similarly tagged score near zero; combinations of conceptually
disjoint parents score near one.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from statistics import median

from . import brandes
from .model import LineageGraph, RemixGraphError

QUADRANTS = ("Q1", "Q2", "Q3", "Q4")
# Q1 = low betweenness / low independence, Q2 = high / low,
# Q3 = low / high,                         Q4 = high / high.
# "high" is strictly greater than the threshold; ties fall to low.


class EmptyTableError(RemixGraphError):
    """No rows with defined scores to derive default thresholds from."""


@dataclass(frozen=True)
class CentralityResult:
    """Raw and normalized betweenness per design id."""

    raw: dict[str, float]
    normalized: dict[str, float]
    orientation: str


@dataclass(frozen=True)
class IndependenceResult:
    value: float | None
    parent_count: int
    has_stub_parent: bool


@dataclass(frozen=True)
class DesignScore:
    id: str
    betweenness: float
    independence: float | None
    quadrant: str | None = None


@dataclass(frozen=True)
class SummaryStats:
    design_count: int
    stub_count: int
    edge_count: int
    multi_parent_count: int
    multi_parent_resolved_count: int
    multi_parent_ratio: float
    component_count: int
    timestamp_violations: int


def _pair_normalizer(n: int, orientation: str) -> float:
    # max number of source/target pairs that can route through a node
    if n <= 2:
        return 0.0
    if orientation == "directed":
        return float((n - 1) * (n - 2))
    return (n - 1) * (n - 2) / 2.0


def betweenness(
    graph: LineageGraph, orientation: str = "undirected", workers: int | None = None
) -> CentralityResult:
    """Exact betweenness for every node under the chosen orientation.

    Undirected counts each unordered source/target pair once; directed
    follows influence (parent->child) and counts ordered pairs. Results
    are reproducible bit-for-bit for any worker count.
    """
    graph.freeze()
    ids, index = brandes.graph_index(graph)
    n = len(ids)
    indptr, indices = brandes.build_csr(graph, orientation, index)
    counts = brandes.betweenness_counts(indptr, indices, n, workers)
    if orientation == "undirected":
        counts = counts / 2.0  # ordered-pair sums count each pair twice
    scale = _pair_normalizer(n, orientation)
    if scale > 0:
        normalized = counts / scale
    else:
        normalized = counts * 0.0
    return CentralityResult(
        raw=dict(zip(ids, counts.tolist())),
        normalized=dict(zip(ids, normalized.tolist())),
        orientation=orientation,
    )


def independence(graph: LineageGraph, design_id: str) -> IndependenceResult:
    """Independence of a design's parents, with the context that defined it."""
    graph.design(design_id)  # raises UnknownDesignError
    parents = [graph.design(pid) for pid in graph.parents_of(design_id)]
    has_stub = any(parent.is_stub for parent in parents)
    if len(parents) < 2 or has_stub:
        return IndependenceResult(None, len(parents), has_stub)
    union: set[str] = set()
    common = set(parents[0].tags)
    for parent in parents:
        union |= parent.tags
        common &= parent.tags
    if not union:
        return IndependenceResult(None, len(parents), has_stub)
    return IndependenceResult(1.0 - len(common) / len(union), len(parents), has_stub)


def independence_score(graph: LineageGraph, design_id: str) -> float | None:
    """1 - |intersection| / |union| over all parent tag sets.

    Defined only for designs with at least two parents, none of them a
    stub, whose tag union is non-empty; returns None otherwise rather
    than fabricating a 0 or 1.
    """
    return independence(graph, design_id).value


def score_table(
    graph: LineageGraph, orientation: str = "undirected", workers: int | None = None
) -> list[DesignScore]:
    """One row per multi-parent non-stub design, sorted by id."""
    graph.freeze()
    centrality = betweenness(graph, orientation, workers)
    return [
        DesignScore(
            id=design_id,
            betweenness=centrality.normalized[design_id],
            independence=independence_score(graph, design_id),
        )
        for design_id in graph.multi_parent_designs()
    ]


def default_thresholds(rows: list[DesignScore]) -> tuple[float, float]:
    """Per-dimension medians over the rows with defined independence."""
    defined = [row for row in rows if row.independence is not None]
    if not defined:
        raise EmptyTableError("no rows with defined scores to take medians over")
    return (
        float(median(row.betweenness for row in defined)),
        float(median(row.independence for row in defined)),
    )


def classify_quadrants(
    rows: list[DesignScore], thresholds: tuple[float, float] | None = None
) -> list[DesignScore]:
    """Label each defined-score row Q1..Q4; undefined rows pass through.

    Thresholds default to the medians of the defined rows; a value is
    "high" only when strictly above its threshold, so a lone row sits at
    its own medians and classifies as Q1.
    """
    if thresholds is None:
        thresholds = default_thresholds(rows)
    b_threshold, i_threshold = thresholds
    out = []
    for row in rows:
        if row.independence is None:
            out.append(row)
            continue
        high_b = row.betweenness > b_threshold
        high_i = row.independence > i_threshold
        quadrant = QUADRANTS[(2 if high_i else 0) + (1 if high_b else 0)]
        out.append(dataclasses.replace(row, quadrant=quadrant))
    return out


def summary(graph: LineageGraph) -> SummaryStats:
    """Population counts for the graph as ingested.

    Reports the multi-parent count both ways the reference count could be
    read: counting every listed parent reference (stubs included) and
    counting only parents that resolved to real designs.
    """
    multi = graph.multi_parent_designs()
    resolved = [
        design_id
        for design_id in multi
        if sum(1 for pid in graph.parents_of(design_id) if not graph.design(pid).is_stub) >= 2
    ]
    total = graph.non_stub_count
    return SummaryStats(
        design_count=total,
        stub_count=graph.stub_count,
        edge_count=graph.edge_count,
        multi_parent_count=len(multi),
        multi_parent_resolved_count=len(resolved),
        multi_parent_ratio=len(multi) / total if total else 0.0,
        component_count=len(graph.weakly_connected_components()),
        timestamp_violations=graph.timestamp_violations(),
    )
