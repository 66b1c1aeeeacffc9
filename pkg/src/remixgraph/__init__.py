"""Remix lineage network analytics.

Reconstructs design lineage graphs from remix metadata, scores
multi-parent designs on normalized betweenness centrality and parent
tag independence, classifies them into quadrants, and recommends
structurally separated, conceptually diverse design pairs.
"""

from .model import (
    CycleError,
    Design,
    DuplicateDesignError,
    FrozenGraphError,
    LineageGraph,
    RemixGraphError,
    SelfLoopError,
    StubDesignError,
    UnknownDesignError,
)
from .ingest import (
    DesignRecord,
    HeaderMismatchError,
    IngestReport,
    LineError,
    build_graph,
    canonical_jsonl,
    normalize_tags,
    parse_csv,
    parse_jsonl,
)
from .metrics import (
    CentralityResult,
    DesignScore,
    EmptyTableError,
    IndependenceResult,
    SummaryStats,
    betweenness,
    classify_quadrants,
    default_thresholds,
    independence,
    independence_score,
    score_table,
    summary,
)
from .recommend import (
    PairCandidate,
    default_separation_cap,
    pair_tag_distance,
    recommend,
    structural_separation,
)
from .synth import InvalidConfigError, SynthConfig, generate

__version__ = "0.1.0"

__all__ = [
    "CentralityResult",
    "CycleError",
    "Design",
    "DesignRecord",
    "DesignScore",
    "DuplicateDesignError",
    "EmptyTableError",
    "FrozenGraphError",
    "HeaderMismatchError",
    "IndependenceResult",
    "IngestReport",
    "InvalidConfigError",
    "LineError",
    "LineageGraph",
    "PairCandidate",
    "RemixGraphError",
    "SelfLoopError",
    "StubDesignError",
    "SummaryStats",
    "SynthConfig",
    "UnknownDesignError",
    "betweenness",
    "build_graph",
    "canonical_jsonl",
    "classify_quadrants",
    "default_separation_cap",
    "default_thresholds",
    "generate",
    "independence",
    "independence_score",
    "normalize_tags",
    "pair_tag_distance",
    "parse_csv",
    "parse_jsonl",
    "recommend",
    "score_table",
    "structural_separation",
    "summary",
]
