"""Command-line interface: ingest, stats, score, quadrants, recommend,
export-dot, plot, and synth.

Exit codes: 0 success, 1 I/O failure, 2 data errors (strict mode or a
CSV header mismatch), 3 empty analytical population, 64 usage errors.
Every subcommand writes byte-identical output for identical inputs,
flags, and seeds; "-" means standard input or output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict
from pathlib import Path
from typing import IO, Sequence

from . import ingest as ingest_mod
from . import metrics
from . import render
from .metrics import DesignScore, EmptyTableError
from .model import LineageGraph
from .recommend import PairCandidate, recommend as run_recommend
from .synth import InvalidConfigError, SynthConfig, generate

EXIT_OK = 0
EXIT_IO = 1
EXIT_DATA = 2
EXIT_EMPTY = 3
EXIT_USAGE = 64

THREADS_ENV = "REMIXGRAPH_THREADS"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse parser that exits 64 on usage errors instead of 2."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError("value must be a positive integer")
    return value


def _seed_value(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _probability(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError("probability must be in [0, 1]")
    return value


def _workers() -> int | None:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return None
    try:
        cap = int(raw)
    except ValueError:
        raise _UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if cap < 1:
        raise _UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return min(cap, os.cpu_count() or 1)


# -- I/O helpers ---------------------------------------------------------


def _open_binary(path: str) -> IO[bytes] | IO[str]:
    if path == "-":
        return getattr(sys.stdin, "buffer", sys.stdin)
    return open(path, "rb")


def _write_text(path: str, text: str) -> None:
    if path == "-":
        buffer = getattr(sys.stdout, "buffer", None)
        if buffer is not None:
            buffer.write(text.encode("utf-8"))
            buffer.flush()
        else:
            sys.stdout.write(text)
    else:
        Path(path).write_bytes(text.encode("utf-8"))


def _load_graph(path: str) -> tuple[LineageGraph, ingest_mod.IngestReport]:
    stream = _open_binary(path)
    try:
        records, errors = ingest_mod.parse_jsonl(stream)
    finally:
        if stream is not getattr(sys.stdin, "buffer", sys.stdin):
            stream.close()
    return ingest_mod.build_graph(records, errors)


def _fmt_float(value: float) -> str:
    return repr(float(value))


def _score_csv(rows: Sequence[DesignScore]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["id", "betweenness", "independence", "quadrant"])
    for row in rows:
        writer.writerow(
            [
                row.id,
                _fmt_float(row.betweenness),
                "NA" if row.independence is None else _fmt_float(row.independence),
                row.quadrant or "",
            ]
        )
    return out.getvalue()


def _pairs_csv(candidates: Sequence[PairCandidate]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["id_a", "id_b", "tag_distance", "structural_separation", "combined_score"])
    for pair in candidates:
        writer.writerow(
            [
                pair.id_a,
                pair.id_b,
                _fmt_float(pair.tag_distance),
                _fmt_float(pair.structural_separation),
                _fmt_float(pair.combined_score),
            ]
        )
    return out.getvalue()


def _report_text(report: ingest_mod.IngestReport) -> str:
    pairs = [
        ("records_read", report.records_read),
        ("records_accepted", report.records_accepted),
        ("duplicates_rejected", report.duplicates_rejected),
        ("self_loops_rejected", report.self_loops_rejected),
        ("malformed_rejected", report.malformed_rejected),
        ("cycle_edges_rejected", report.cycle_edges_rejected),
        ("stubs_created", report.stubs_created),
        ("timestamp_violations", report.timestamp_violations),
    ]
    width = max(len(name) for name, _ in pairs)
    lines = [f"{name:<{width}}  {value}" for name, value in pairs]
    if report.rejections:
        lines.append("rejections:")
        lines.extend(f"  line {item.line}: {item.reason}" for item in report.rejections)
    return "".join(line + "\n" for line in lines)


def _summary_text(stats: metrics.SummaryStats) -> str:
    pairs = [
        ("designs", str(stats.design_count)),
        ("stubs", str(stats.stub_count)),
        ("edges", str(stats.edge_count)),
        ("multi_parent", str(stats.multi_parent_count)),
        ("multi_parent_resolved", str(stats.multi_parent_resolved_count)),
        ("multi_parent_ratio", f"{stats.multi_parent_ratio:.6f}"),
        ("components", str(stats.component_count)),
        ("timestamp_violations", str(stats.timestamp_violations)),
    ]
    width = max(len(name) for name, _ in pairs)
    return "".join(f"{name:<{width}}  {value}\n" for name, value in pairs)


def _default_snapshot_path(input_path: str) -> str:
    if input_path == "-":
        return "-"
    path = Path(input_path)
    return str(path.with_name(path.stem + ".canonical.jsonl"))


# -- subcommands ---------------------------------------------------------


def cmd_ingest(args: argparse.Namespace) -> int:
    if args.format == "jsonl":
        if args.input is None:
            raise _UsageError("jsonl ingest needs an input path (or '-')")
        stream = _open_binary(args.input)
        try:
            records, errors = ingest_mod.parse_jsonl(stream)
        finally:
            if args.input != "-":
                stream.close()
        source = args.input
    else:
        if not args.nodes or not args.edges:
            raise _UsageError("csv ingest needs --nodes and --edges")
        with open(args.nodes, "r", encoding="utf-8", newline="") as nodes_stream:
            with open(args.edges, "r", encoding="utf-8", newline="") as edges_stream:
                records, errors = ingest_mod.parse_csv(nodes_stream, edges_stream)
        source = args.nodes
    graph, report = ingest_mod.build_graph(records, errors)

    out_path = args.out or _default_snapshot_path(source)
    strict_failure = args.strict and report.malformed_rejected > 0
    report_stream = sys.stderr if out_path == "-" else sys.stdout
    report_stream.write(_report_text(report))
    if strict_failure:
        print("strict mode: malformed input lines present", file=sys.stderr)
        return EXIT_DATA
    _write_text(out_path, ingest_mod.canonical_jsonl(graph))
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    graph, _ = _load_graph(args.input)
    stats = metrics.summary(graph)
    if args.json:
        _write_text("-", json.dumps(asdict(stats), indent=2) + "\n")
    else:
        _write_text("-", _summary_text(stats))
    return EXIT_OK


def cmd_score(args: argparse.Namespace) -> int:
    graph, _ = _load_graph(args.input)
    rows = metrics.score_table(graph, args.orientation, _workers())
    if not rows:
        print("no multi-parent designs to score", file=sys.stderr)
        return EXIT_EMPTY
    _write_text(args.out, _score_csv(rows))
    return EXIT_OK


def cmd_quadrants(args: argparse.Namespace) -> int:
    graph, _ = _load_graph(args.input)
    rows = metrics.score_table(graph, args.orientation, _workers())
    if not rows:
        print("no multi-parent designs to classify", file=sys.stderr)
        return EXIT_EMPTY
    thresholds = tuple(args.thresholds) if args.thresholds else None
    try:
        labeled = metrics.classify_quadrants(rows, thresholds)
    except EmptyTableError:
        print("no rows with defined scores; supply --thresholds", file=sys.stderr)
        return EXIT_EMPTY
    _write_text(args.out, _score_csv(labeled))
    return EXIT_OK


def cmd_recommend(args: argparse.Namespace) -> int:
    if args.strategy == "sampled" and args.samples is None:
        raise _UsageError("sampled strategy needs --samples")
    graph, _ = _load_graph(args.input)
    candidates = run_recommend(
        graph,
        k=args.k,
        strategy=args.strategy,
        samples=args.samples,
        seed=args.seed,
        cap=args.cap,
        workers=_workers(),
    )
    _write_text(args.out, _pairs_csv(candidates))
    return EXIT_OK


def cmd_export_dot(args: argparse.Namespace) -> int:
    graph, _ = _load_graph(args.input)
    _write_text(args.out, render.to_dot(graph))
    return EXIT_OK


def cmd_plot(args: argparse.Namespace) -> int:
    graph, _ = _load_graph(args.input)
    rows = metrics.score_table(graph, args.orientation, _workers())
    defined = [row for row in rows if row.independence is not None]
    if not defined:
        print("no rows with defined scores to plot", file=sys.stderr)
        return EXIT_EMPTY
    thresholds = tuple(args.thresholds) if args.thresholds else metrics.default_thresholds(rows)
    _write_text(args.out, render.scatter_svg(rows, thresholds))
    return EXIT_OK


def cmd_synth(args: argparse.Namespace) -> int:
    try:
        config = SynthConfig(
            n=args.n,
            p_multi=args.p_multi,
            tag_pool=args.tag_pool,
            tags_per_design=args.tags_per_design,
            p_inherit=args.p_inherit,
            seed=args.seed,
        )
    except InvalidConfigError as exc:
        raise _UsageError(str(exc)) from None
    graph = generate(config)
    _write_text(args.out, ingest_mod.canonical_jsonl(graph))
    return EXIT_OK


# -- parser wiring -------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="remixgraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ingest", help="parse a dataset and write a canonical JSONL snapshot")
    p.add_argument("input", nargs="?", help="JSONL input path, or '-' for stdin")
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--nodes", help="nodes CSV (csv format)")
    p.add_argument("--edges", help="edges CSV (csv format)")
    p.add_argument("--out", help="snapshot path (default: <input>.canonical.jsonl)")
    p.add_argument("--strict", action="store_true", help="exit 2 on any malformed line")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("stats", help="print population summary")
    p.add_argument("input")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("score", help="score table CSV for multi-parent designs")
    p.add_argument("input")
    p.add_argument("--orientation", choices=("undirected", "directed"), default="undirected")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("quadrants", help="score table CSV with quadrant labels")
    p.add_argument("input")
    p.add_argument("--orientation", choices=("undirected", "directed"), default="undirected")
    p.add_argument("--thresholds", nargs=2, type=float, metavar=("BETWEENNESS", "INDEPENDENCE"))
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_quadrants)

    p = sub.add_parser("recommend", help="top-k combination candidate pairs CSV")
    p.add_argument("input")
    p.add_argument("-k", "--top", dest="k", type=_positive_int, default=10)
    p.add_argument("--strategy", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--samples", type=_positive_int, help="pairs to draw (sampled strategy)")
    p.add_argument("--seed", type=_seed_value, default=0)
    p.add_argument("--cap", type=_positive_int, help="separation cap (default: diameter)")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_recommend)

    p = sub.add_parser("export-dot", help="DOT digraph with child -> parent edges")
    p.add_argument("input")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("plot", help="SVG scatter of the two score dimensions")
    p.add_argument("input")
    p.add_argument("--out", default="-")
    p.add_argument("--orientation", choices=("undirected", "directed"), default="undirected")
    p.add_argument("--thresholds", nargs=2, type=float, metavar=("BETWEENNESS", "INDEPENDENCE"))
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("synth", help="generate a synthetic remix network as JSONL")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--p-multi", type=_probability, default=0.05)
    p.add_argument("--tag-pool", type=_positive_int, default=50)
    p.add_argument("--tags-per-design", type=_positive_int, default=4)
    p.add_argument("--p-inherit", type=_probability, default=0.5)
    p.add_argument("--seed", type=_seed_value, required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"remixgraph: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ingest_mod.HeaderMismatchError as exc:
        print(f"remixgraph: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"remixgraph: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
