"""Truss decomposition for dynamic graphs.

A truss number K(e) is the largest k for which edge e sits in a k-truss,
the subgraph where every edge closes at least k - 2 triangles. This
package computes the full decomposition by support peeling and keeps it
current under streaming single-edge and batch insertions, orders of
magnitude cheaper than recomputing, with a scratch oracle and a replay
benchmark harness for verification.
"""

from .graph import (
    Edge,
    EdgeOutcome,
    Graph,
    Triangle,
    UnknownEdgeError,
    canonical_edge,
    canonical_triangle,
)
from .peeling import (
    TrussState,
    TrussSubgraph,
    extract_truss,
    truss_decompose,
    verify_state,
)
from .incremental import (
    DEGREE_GATED,
    FULL_EXPLORATION,
    CandidateSet,
    InsertionResult,
    LevelOutcome,
    TrussDegreeIndex,
    explore_candidates,
    insert_edge,
    min_truss_of_triangle,
    prune_candidates,
    rebuild_truss_degrees,
    run_level,
)
from .batch import BatchEdgeStatus, BatchResult, batch_insert
from .stream import (
    StreamDataset,
    StreamStats,
    TemporalEdge,
    build_prefix,
    events_to_graph,
    generate_synthetic,
    load_temporal_edges,
    preferential_attachment_graph,
    sparse_stream,
    uniform_random_graph,
)
from .bench import (
    BenchReport,
    run_batch_bench,
    run_stream_bench,
    run_verify_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "Edge",
    "EdgeOutcome",
    "Graph",
    "Triangle",
    "UnknownEdgeError",
    "canonical_edge",
    "canonical_triangle",
    "TrussState",
    "TrussSubgraph",
    "extract_truss",
    "truss_decompose",
    "verify_state",
    "DEGREE_GATED",
    "FULL_EXPLORATION",
    "CandidateSet",
    "InsertionResult",
    "LevelOutcome",
    "TrussDegreeIndex",
    "explore_candidates",
    "insert_edge",
    "min_truss_of_triangle",
    "prune_candidates",
    "rebuild_truss_degrees",
    "run_level",
    "BatchEdgeStatus",
    "BatchResult",
    "batch_insert",
    "StreamDataset",
    "StreamStats",
    "TemporalEdge",
    "build_prefix",
    "events_to_graph",
    "generate_synthetic",
    "load_temporal_edges",
    "preferential_attachment_graph",
    "sparse_stream",
    "uniform_random_graph",
    "BenchReport",
    "run_batch_bench",
    "run_stream_bench",
    "run_verify_sweep",
    "__version__",
]
