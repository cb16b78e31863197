"""Desk-scale laboratory for centralized and distributed randomized PageRank."""

from ._version import ARTIFACT_VERSION as __version__
from .errors import PageRankLabError
from .graph import DanglingPolicy, WebGraph, build_link_matrix, generate_random_graph, parse_edge_list
from .matrix import ColumnStochasticMatrix

__all__ = [
    "__version__",
    "PageRankLabError",
    "WebGraph",
    "DanglingPolicy",
    "ColumnStochasticMatrix",
    "build_link_matrix",
    "generate_random_graph",
    "parse_edge_list",
]
