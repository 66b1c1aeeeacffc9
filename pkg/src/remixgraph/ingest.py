"""Parse dataset files into design records and build validated lineage graphs.

Two input formats are supported: JSON Lines (the canonical interchange
format, one design object per line) and a CSV pair (a nodes file joined
with a child/parent edges file). Parsing is line-tolerant: a malformed
line is reported and skipped, never aborting the stream. Graph-level
problems (duplicates, self-loops, cycle-creating edges) are counted in
an :class:`IngestReport` instead of raising.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import IO, Iterable, Sequence

from .model import Design, LineageGraph, CycleError, RemixGraphError


class HeaderMismatchError(RemixGraphError):
    """A CSV stream did not start with the expected header row."""


NODES_HEADER = ["id", "title", "author", "created_at", "tags"]
EDGES_HEADER = ["child_id", "parent_id"]

JSONL_KEYS = ("id", "title", "author", "created_at", "tags", "parents")


@dataclass(frozen=True)
class DesignRecord:
    """One parsed input record, tags and parent ids still raw."""

    id: str
    title: str
    author: str
    created_at: float | None
    tags: tuple[str, ...]
    parent_ids: tuple[str, ...]
    line: int


@dataclass(frozen=True)
class LineError:
    line: int
    reason: str


@dataclass(frozen=True)
class IngestReport:
    """Counts and per-line details for one ingestion run.

    ``records_read`` always equals ``records_accepted + duplicates_rejected
    + self_loops_rejected + malformed_rejected``; cycle rejections drop an
    edge, not a record, so they sit outside that arithmetic.
    """

    records_read: int
    records_accepted: int
    duplicates_rejected: int
    self_loops_rejected: int
    malformed_rejected: int
    cycle_edges_rejected: int
    stubs_created: int
    timestamp_violations: int
    rejections: tuple[LineError, ...] = ()


def normalize_tags(raw: Iterable[str]) -> frozenset[str]:
    """Lowercase, trim, collapse inner whitespace, drop empties and duplicates."""
    out = set()
    for tag in raw:
        cleaned = " ".join(tag.lower().split())
        if cleaned:
            out.add(cleaned)
    return frozenset(out)


def parse_timestamp(value: str | int | float | None) -> float | None:
    """Accept RFC 3339 strings or epoch seconds; return epoch seconds UTC.

    Naive datetimes are taken as UTC. Raises ValueError for anything else.
    """
    if value is None:
        return None
    if isinstance(value, bool):
        raise ValueError("created_at must be a timestamp, not a boolean")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            return None
        if text[-1] in "zZ":
            text = text[:-1] + "+00:00"
        moment = datetime.fromisoformat(text)
        if moment.tzinfo is None:
            moment = moment.replace(tzinfo=timezone.utc)
        return moment.timestamp()
    raise ValueError(f"created_at has unsupported type {type(value).__name__}")


def _string_list(value: object, field: str) -> list[str]:
    if not isinstance(value, (list, tuple)):
        raise ValueError(f"{field} must be a list of strings")
    for item in value:
        if not isinstance(item, str):
            raise ValueError(f"{field} must be a list of strings")
    return list(value)


def _record_from_object(obj: object, line: int) -> DesignRecord:
    if not isinstance(obj, dict):
        raise ValueError("record is not a JSON object")
    design_id = obj.get("id")
    if not isinstance(design_id, str) or not design_id.strip():
        raise ValueError("missing or empty id")
    title = obj.get("title", "")
    author = obj.get("author", "")
    if not isinstance(title, str) or not isinstance(author, str):
        raise ValueError("title and author must be strings")
    created_at = parse_timestamp(obj.get("created_at"))
    tags = _string_list(obj.get("tags", []), "tags")
    parents = []
    for parent in _string_list(obj.get("parents", []), "parents"):
        parent = parent.strip()
        if not parent:
            raise ValueError("empty parent id")
        parents.append(parent)
    return DesignRecord(
        id=design_id.strip(),
        title=title,
        author=author,
        created_at=created_at,
        tags=tuple(tags),
        parent_ids=tuple(parents),
        line=line,
    )


def parse_jsonl(stream: IO[bytes] | IO[str]) -> tuple[list[DesignRecord], list[LineError]]:
    """Parse newline-delimited design records.

    Each line is handled independently; malformed lines land in the error
    list with their line number and never abort the stream. Blank lines
    are skipped.
    """
    records: list[DesignRecord] = []
    errors: list[LineError] = []
    for line_no, raw in enumerate(stream, start=1):
        if isinstance(raw, bytes):
            try:
                raw = raw.decode("utf-8")
            except UnicodeDecodeError:
                errors.append(LineError(line_no, "invalid UTF-8"))
                continue
        text = raw.strip()
        if not text:
            continue
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            errors.append(LineError(line_no, f"invalid JSON: {exc.msg}"))
            continue
        try:
            records.append(_record_from_object(obj, line_no))
        except ValueError as exc:
            errors.append(LineError(line_no, str(exc)))
    return records, errors


def parse_csv(
    nodes_stream: IO[str], edges_stream: IO[str]
) -> tuple[list[DesignRecord], list[LineError]]:
    """Parse a nodes CSV joined with a child/parent edges CSV.

    The nodes file must start with ``id,title,author,created_at,tags``
    (tags ``|``-separated) and the edges file with ``child_id,parent_id``;
    any other header aborts with :class:`HeaderMismatchError`. Edge rows
    naming an unknown child become line errors; unknown parents are kept
    as references and resolve to stubs at build time.
    """
    errors: list[LineError] = []

    nodes_reader = csv.reader(nodes_stream)
    header = next(nodes_reader, None)
    if header is None or [cell.strip() for cell in header] != NODES_HEADER:
        raise HeaderMismatchError(f"nodes file must start with header {','.join(NODES_HEADER)}")

    rows: list[tuple[str, str, str, float | None, tuple[str, ...], int, list[str]]] = []
    # edges attach to the first node row with a given id; later duplicates
    # are carried through and rejected by build_graph's first-wins policy
    edge_target: dict[str, list[str]] = {}
    for row in nodes_reader:
        line_no = nodes_reader.line_num
        if not row:
            continue
        if len(row) != len(NODES_HEADER):
            errors.append(
                LineError(line_no, f"nodes: expected {len(NODES_HEADER)} fields, got {len(row)}")
            )
            continue
        design_id, title, author, created_raw, tags_raw = row
        design_id = design_id.strip()
        if not design_id:
            errors.append(LineError(line_no, "nodes: missing or empty id"))
            continue
        created_text = created_raw.strip()
        try:
            if not created_text:
                created_at = None
            else:
                try:
                    created_at = float(created_text)
                except ValueError:
                    created_at = parse_timestamp(created_text)
        except ValueError as exc:
            errors.append(LineError(line_no, f"nodes: {exc}"))
            continue
        tags = tuple(part for part in (p.strip() for p in tags_raw.split("|")) if part)
        own_parents: list[str] = []
        rows.append((design_id, title, author, created_at, tags, line_no, own_parents))
        edge_target.setdefault(design_id, own_parents)

    edges_reader = csv.reader(edges_stream)
    header = next(edges_reader, None)
    if header is None or [cell.strip() for cell in header] != EDGES_HEADER:
        raise HeaderMismatchError(f"edges file must start with header {','.join(EDGES_HEADER)}")
    for row in edges_reader:
        line_no = edges_reader.line_num
        if not row:
            continue
        if len(row) != len(EDGES_HEADER):
            errors.append(
                LineError(line_no, f"edges: expected {len(EDGES_HEADER)} fields, got {len(row)}")
            )
            continue
        child, parent = row[0].strip(), row[1].strip()
        if not child or not parent:
            errors.append(LineError(line_no, "edges: empty child or parent id"))
            continue
        if child not in edge_target:
            errors.append(LineError(line_no, f"edges: unknown child id {child!r}"))
            continue
        edge_target[child].append(parent)

    records = [
        DesignRecord(
            id=design_id,
            title=title,
            author=author,
            created_at=created_at,
            tags=tags,
            parent_ids=tuple(own_parents),
            line=line_no,
        )
        for design_id, title, author, created_at, tags, line_no, own_parents in rows
    ]
    return records, errors


def _dedupe(items: Sequence[str]) -> tuple[str, ...]:
    seen: set[str] = set()
    out = []
    for item in items:
        if item not in seen:
            seen.add(item)
            out.append(item)
    return tuple(out)


def build_graph(
    records: Sequence[DesignRecord], parse_errors: Sequence[LineError] = ()
) -> tuple[LineageGraph, IngestReport]:
    """Insert records in input order and report every rejection.

    Policy: first record wins on duplicate ids; a record listing itself
    as parent is rejected whole; an edge that would close a cycle is
    dropped individually (the record stays); unresolved parents become
    stub nodes.
    """
    graph = LineageGraph()
    rejections = list(parse_errors)
    accepted = 0
    duplicates = 0
    self_loops = 0
    cycle_edges = 0

    for record in records:
        parent_ids = _dedupe(record.parent_ids)
        if record.id in parent_ids:
            self_loops += 1
            rejections.append(
                LineError(record.line, f"design {record.id!r} lists itself as a parent")
            )
            continue
        if record.id in graph and not graph.design(record.id).is_stub:
            duplicates += 1
            rejections.append(LineError(record.line, f"duplicate design id {record.id!r}"))
            continue
        design = Design(
            id=record.id,
            title=record.title,
            author=record.author,
            created_at=record.created_at,
            tags=normalize_tags(record.tags),
            parent_ids=parent_ids,
        )
        graph.put_design(design)
        for parent_id in parent_ids:
            graph.ensure_stub(parent_id)
            try:
                graph.add_edge(record.id, parent_id)
            except CycleError:
                cycle_edges += 1
                rejections.append(
                    LineError(
                        record.line,
                        f"edge {record.id!r} -> {parent_id!r} would create a cycle",
                    )
                )
        accepted += 1

    report = IngestReport(
        records_read=len(records) + len(parse_errors),
        records_accepted=accepted,
        duplicates_rejected=duplicates,
        self_loops_rejected=self_loops,
        malformed_rejected=len(parse_errors),
        cycle_edges_rejected=cycle_edges,
        stubs_created=graph.stub_count,
        timestamp_violations=graph.timestamp_violations(),
        rejections=tuple(rejections),
    )
    return graph, report


def _created_at_json(value: float | None) -> float | int | None:
    if value is None:
        return None
    if float(value).is_integer():
        return int(value)
    return value


def canonical_jsonl(graph: LineageGraph) -> str:
    """Serialize the non-stub designs as canonical JSON Lines.

    Deterministic: designs sorted by id, tags sorted, parents in accepted
    insertion order. Stubs are omitted; they reappear automatically when
    the output is re-ingested because dangling references recreate them.
    """
    lines = []
    for design in graph.designs():
        if design.is_stub:
            continue
        obj = {
            "id": design.id,
            "title": design.title,
            "author": design.author,
            "created_at": _created_at_json(design.created_at),
            "tags": sorted(design.tags),
            "parents": graph.parents_of(design.id),
        }
        lines.append(json.dumps(obj, ensure_ascii=False, separators=(",", ":")))
    return "".join(line + "\n" for line in lines)
