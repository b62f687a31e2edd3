"""Truss-based temporal community search.

Given a temporal graph, a query vertex ``q`` and a time-span bound ``delta``,
find the maximal (k, delta)-truss containing ``q`` with one of three engines:
``gs_search`` (global peeling), ``ls_search`` (local expansion) or
``tts_query`` (answered from a prebuilt temporal-trussness index).
"""
from .gen import GenSpec, Planted, downsample_vertices, generate, generate_with_truth
from .graph import (GraphFormatError, TemporalGraph, UnknownEdgeError, UnknownVertexError,
                    from_temporal_edges, induced_subgraph, load_graph, slice_graph)
from .localsearch import ls_search
from .metrics import MetricReport, estimate_delta_star, evaluate, htc, htd
from .tricount import count_triangle_sliding, temporal_support_all, temporal_support_edge
from .truss import PAPER, STRICT, CommunityResult, decompose, gs_search, higher_order_components
from .ttindex import (FingerprintMismatchError, IndexCoverageError, IndexFormatError,
                      IndexTruncatedError, IndexVersionError, TTIndex, TTIndexError, build_index,
                      find_index, load_index, save_index)
from .ttsquery import tts_query

__all__ = [
    "GenSpec", "Planted", "downsample_vertices", "generate", "generate_with_truth",
    "GraphFormatError", "TemporalGraph", "UnknownEdgeError", "UnknownVertexError",
    "from_temporal_edges", "induced_subgraph", "load_graph", "slice_graph",
    "ls_search", "MetricReport", "estimate_delta_star", "evaluate", "htc", "htd",
    "count_triangle_sliding", "temporal_support_all", "temporal_support_edge",
    "PAPER", "STRICT", "CommunityResult", "decompose", "gs_search", "higher_order_components",
    "FingerprintMismatchError", "IndexCoverageError", "IndexFormatError", "IndexTruncatedError",
    "IndexVersionError", "TTIndex", "TTIndexError", "build_index", "find_index", "load_index",
    "save_index", "tts_query",
]
