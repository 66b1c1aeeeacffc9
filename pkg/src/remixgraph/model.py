"""Core domain types and the remix lineage graph.

A lineage graph stores designs as nodes and "derived from" links as
directed edges from child to parent. The graph is acyclic by contract:
every mutation that could introduce a cycle is rejected. Parents that
are referenced but never defined are kept as flagged stub nodes so the
link structure stays intact.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from graphlib import TopologicalSorter
from typing import Iterator


class RemixGraphError(Exception):
    """Base class for all errors raised by this package."""


class UnknownDesignError(RemixGraphError):
    """An operation referenced a design id that is not in the graph."""


class DuplicateDesignError(RemixGraphError):
    """A non-stub design with the same id already exists."""


class SelfLoopError(RemixGraphError):
    """A design listed itself as its own parent."""


class CycleError(RemixGraphError):
    """Adding the edge would make the child->parent graph cyclic."""


class StubDesignError(RemixGraphError):
    """The operation is not defined for stub (unresolved) designs."""


class FrozenGraphError(RemixGraphError):
    """The graph has been frozen and no longer accepts mutations."""


INFINITE = math.inf


@dataclass(frozen=True)
class Design:
    """One design: identity, metadata, tag set, and declared parents.

    ``parent_ids`` is the list as declared by the author; the graph's
    adjacency reflects only the edges that were actually accepted
    (cycle-creating references are dropped by ingestion).
    """

    id: str
    title: str = ""
    author: str = ""
    created_at: float | None = None
    tags: frozenset[str] = frozenset()
    parent_ids: tuple[str, ...] = ()
    is_stub: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "tags", frozenset(self.tags))
        object.__setattr__(self, "parent_ids", tuple(self.parent_ids))
        if not self.id or self.id != self.id.strip():
            raise ValueError(f"design id must be a non-empty trimmed string, got {self.id!r}")
        if self.id in self.parent_ids:
            raise SelfLoopError(f"design {self.id!r} lists itself as a parent")
        if len(set(self.parent_ids)) != len(self.parent_ids):
            raise ValueError(f"design {self.id!r} has duplicate parent ids")
        if self.is_stub and (self.title or self.author or self.tags or self.parent_ids):
            raise ValueError("stub designs carry no metadata, tags, or parents")


def make_stub(design_id: str) -> Design:
    """Placeholder node for a parent that was referenced but never defined."""
    return Design(id=design_id, is_stub=True)


class LineageGraph:
    """Acyclic child->parent remix network with mirrored adjacency indexes.

    Build once (single writer), then :meth:`freeze` for concurrent
    read-only use. Metric code freezes the graph implicitly.
    """

    def __init__(self) -> None:
        self._nodes: dict[str, Design] = {}
        self._parents: dict[str, list[str]] = {}
        self._children: dict[str, list[str]] = {}
        self._edge_count = 0
        self._frozen = False

    # -- basic queries -------------------------------------------------

    def __len__(self) -> int:
        return len(self._nodes)

    def __contains__(self, design_id: str) -> bool:
        return design_id in self._nodes

    @property
    def node_count(self) -> int:
        """Total nodes, stubs included."""
        return len(self._nodes)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def stub_count(self) -> int:
        return sum(1 for d in self._nodes.values() if d.is_stub)

    @property
    def non_stub_count(self) -> int:
        return len(self._nodes) - self.stub_count

    @property
    def frozen(self) -> bool:
        return self._frozen

    def design(self, design_id: str) -> Design:
        try:
            return self._nodes[design_id]
        except KeyError:
            raise UnknownDesignError(f"unknown design {design_id!r}") from None

    def ids(self) -> list[str]:
        """All node ids, sorted."""
        return sorted(self._nodes)

    def designs(self) -> Iterator[Design]:
        """All designs in sorted-id order."""
        for design_id in self.ids():
            yield self._nodes[design_id]

    def edges(self) -> Iterator[tuple[str, str]]:
        """All (child, parent) edges; children sorted, parents in insertion order."""
        for child in self.ids():
            for parent in self._parents[child]:
                yield child, parent

    # -- mutation ------------------------------------------------------

    def freeze(self) -> None:
        """Make the graph immutable. Idempotent."""
        self._frozen = True

    def _ensure_mutable(self) -> None:
        if self._frozen:
            raise FrozenGraphError("graph is frozen; no further mutation allowed")

    def put_design(self, design: Design) -> None:
        """Insert or replace-stub a node without touching edges.

        Low-level building block for streaming ingestion, where parent
        edges are added one at a time so that individual bad edges can
        be rejected without dropping the record. Most callers want
        :meth:`add_design` instead.
        """
        self._ensure_mutable()
        existing = self._nodes.get(design.id)
        if existing is not None and not existing.is_stub and not design.is_stub:
            raise DuplicateDesignError(f"design {design.id!r} already present")
        self._nodes[design.id] = design
        self._parents.setdefault(design.id, [])
        self._children.setdefault(design.id, [])

    def ensure_stub(self, design_id: str) -> None:
        """Create a stub node for ``design_id`` unless the id already resolves."""
        self._ensure_mutable()
        if design_id not in self._nodes:
            self.put_design(make_stub(design_id))

    def add_design(self, design: Design) -> None:
        """Add a design and all its parent edges atomically.

        Unresolved parents become stubs; a pre-existing stub with this id
        is replaced with its incident edges preserved. Raises before any
        mutation happens, so a failed call leaves the graph unchanged.
        """
        self._ensure_mutable()
        if design.is_stub:
            raise ValueError("stubs are created internally; add a real design")
        existing = self._nodes.get(design.id)
        if existing is not None and not existing.is_stub:
            raise DuplicateDesignError(f"design {design.id!r} already present")
        for parent_id in design.parent_ids:
            if parent_id in self._nodes and self._reaches_up(parent_id, design.id):
                raise CycleError(
                    f"edge {design.id!r} -> {parent_id!r} would create a cycle"
                )
        self.put_design(design)
        for parent_id in design.parent_ids:
            self.ensure_stub(parent_id)
            self._link(design.id, parent_id)

    def add_edge(self, child: str, parent: str) -> None:
        """Add one child->parent edge; re-adding an existing edge is a no-op."""
        self._ensure_mutable()
        if child == parent:
            raise SelfLoopError(f"design {child!r} cannot be its own parent")
        if child not in self._nodes:
            raise UnknownDesignError(f"unknown design {child!r}")
        if parent not in self._nodes:
            raise UnknownDesignError(f"unknown design {parent!r}")
        if parent in self._parents[child]:
            return
        if self._reaches_up(parent, child):
            raise CycleError(f"edge {child!r} -> {parent!r} would create a cycle")
        self._link(child, parent)

    def _link(self, child: str, parent: str) -> None:
        self._parents[child].append(parent)
        self._children[parent].append(child)
        self._edge_count += 1

    def _reaches_up(self, start: str, target: str) -> bool:
        """True when ``target`` is reachable from ``start`` via parent links."""
        stack = [start]
        seen = {start}
        while stack:
            node = stack.pop()
            if node == target:
                return True
            for parent in self._parents.get(node, ()):
                if parent not in seen:
                    seen.add(parent)
                    stack.append(parent)
        return False

    # -- structural queries --------------------------------------------

    def parents_of(self, design_id: str) -> list[str]:
        """Accepted parents in insertion order."""
        if design_id not in self._nodes:
            raise UnknownDesignError(f"unknown design {design_id!r}")
        return list(self._parents[design_id])

    def children_of(self, design_id: str) -> list[str]:
        """Children sorted by id for determinism."""
        if design_id not in self._nodes:
            raise UnknownDesignError(f"unknown design {design_id!r}")
        return sorted(self._children[design_id])

    def multi_parent_designs(self) -> list[str]:
        """Non-stub designs with two or more parents (stub parents count), sorted."""
        return sorted(
            design_id
            for design_id, design in self._nodes.items()
            if not design.is_stub and len(self._parents[design_id]) >= 2
        )

    def is_ancestor_of(self, ancestor: str, descendant: str) -> bool:
        """True when ``ancestor`` is a proper ancestor of ``descendant``."""
        if ancestor not in self._nodes:
            raise UnknownDesignError(f"unknown design {ancestor!r}")
        if descendant not in self._nodes:
            raise UnknownDesignError(f"unknown design {descendant!r}")
        if ancestor == descendant:
            return False
        return self._reaches_up(descendant, ancestor)

    def ancestors_of(self, design_id: str) -> set[str]:
        """Transitive closure of parents."""
        if design_id not in self._nodes:
            raise UnknownDesignError(f"unknown design {design_id!r}")
        out: set[str] = set()
        stack = list(self._parents[design_id])
        while stack:
            node = stack.pop()
            if node not in out:
                out.add(node)
                stack.extend(self._parents[node])
        return out

    def undirected_distance(self, a: str, b: str) -> int | float:
        """Hop count of the shortest path ignoring direction; inf if disconnected."""
        if a not in self._nodes:
            raise UnknownDesignError(f"unknown design {a!r}")
        if b not in self._nodes:
            raise UnknownDesignError(f"unknown design {b!r}")
        if a == b:
            return 0
        dist = {a: 0}
        queue = deque([a])
        while queue:
            node = queue.popleft()
            d = dist[node]
            for neighbor in self._parents[node] + self._children[node]:
                if neighbor not in dist:
                    if neighbor == b:
                        return d + 1
                    dist[neighbor] = d + 1
                    queue.append(neighbor)
        return INFINITE

    def weakly_connected_components(self) -> list[list[str]]:
        """Components ignoring edge direction, largest first; ids sorted within."""
        seen: set[str] = set()
        components: list[list[str]] = []
        for start in self.ids():
            if start in seen:
                continue
            member = [start]
            seen.add(start)
            queue = deque([start])
            while queue:
                node = queue.popleft()
                for neighbor in self._parents[node] + self._children[node]:
                    if neighbor not in seen:
                        seen.add(neighbor)
                        member.append(neighbor)
                        queue.append(neighbor)
            member.sort()
            components.append(member)
        components.sort(key=lambda c: (-len(c), c[0]))
        return components

    def timestamp_violations(self) -> int:
        """Edges where the child claims an earlier creation time than its parent.

        Diagnostic only; such edges are stored as-is because real remix
        dumps are noisy.
        """
        count = 0
        for child, parent in self.edges():
            child_at = self._nodes[child].created_at
            parent_at = self._nodes[parent].created_at
            if child_at is not None and parent_at is not None and child_at < parent_at:
                count += 1
        return count

    def topological_order(self) -> list[str]:
        """A parents-before-children ordering; always succeeds on a valid graph."""
        sorter: TopologicalSorter[str] = TopologicalSorter()
        for design_id in self.ids():
            sorter.add(design_id, *self._parents[design_id])
        return list(sorter.static_order())
