"""Directed web graphs and their column-stochastic link matrices.

A graph on n pages induces the sparse link matrix whose column j
carries 1/n_j at every out-neighbor of page j, where n_j is the
out-degree.  Pages without out-links yield zero columns, which are
repaired according to a dangling policy so the result is always
column-stochastic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    DanglingNode,
    IndexOutOfRange,
    InvalidProbability,
    MalformedLine,
    TooFewPages,
)
from .matrix import ColumnStochasticMatrix
from .rng import philox_stream

MIN_PAGES = 3

_DIRECTIVE = re.compile(r"^#\s*n\s*=\s*(\d+)\s*$")


class DanglingPolicy(Enum):
    """How to repair a zero column left by a page without out-links."""

    UNIFORM = "uniform"
    SELFLOOP = "selfloop"
    REJECT = "reject"


@dataclass(frozen=True)
class WebGraph:
    """Directed page-link structure with 0-based page indices.

    out_links[j] is the strictly increasing tuple of distinct pages i
    such that the edge (j, i) exists.  Self-loops are allowed and count
    toward the out-degree.
    """

    n: int
    out_links: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < MIN_PAGES:
            raise TooFewPages(f"need more than 2 pages, got n={self.n}")
        if len(self.out_links) != self.n:
            raise IndexOutOfRange(
                f"out_links has {len(self.out_links)} rows for n={self.n}"
            )
        for j, targets in enumerate(self.out_links):
            prev = -1
            for i in targets:
                if not 0 <= i < self.n:
                    raise IndexOutOfRange(f"edge ({j}, {i}) outside [0, {self.n})")
                if i <= prev:
                    raise IndexOutOfRange(
                        f"out_links[{j}] not strictly increasing at target {i}"
                    )
                prev = i

    def out_degree(self, j: int) -> int:
        return len(self.out_links[j])

    @property
    def edge_count(self) -> int:
        return sum(len(t) for t in self.out_links)

    def edges(self):
        for j, targets in enumerate(self.out_links):
            for i in targets:
                yield (j, i)


def webgraph_from_edges(n: int, edges) -> WebGraph:
    """Build a graph from (src, dst) pairs; duplicates collapse silently."""
    seen: list[set[int]] = [set() for _ in range(max(n, 0))]
    for src, dst in edges:
        if not 0 <= src < n:
            raise IndexOutOfRange(f"source index {src} outside [0, {n})")
        if not 0 <= dst < n:
            raise IndexOutOfRange(f"target index {dst} outside [0, {n})")
        seen[src].add(dst)
    return WebGraph(n=n, out_links=tuple(tuple(sorted(s)) for s in seen))


def parse_edge_list(text: str) -> WebGraph:
    """Parse an edge-list file.

    Each non-empty, non-comment line holds "src dst" with 0-based
    indices; lines starting with '#' are comments; an optional
    "# n=<N>" directive fixes the page count, otherwise it is one plus
    the largest index seen.
    """
    declared_n: int | None = None
    edges: list[tuple[int, int]] = []
    max_index = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _DIRECTIVE.match(line)
            if m and declared_n is None:
                declared_n = int(m.group(1))
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise MalformedLine(f"line {lineno}: expected 2 tokens, got {len(tokens)}: {line!r}")
        try:
            src, dst = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise MalformedLine(f"line {lineno}: non-integer token in {line!r}") from None
        if src < 0 or dst < 0:
            raise MalformedLine(f"line {lineno}: negative index in {line!r}")
        edges.append((src, dst))
        max_index = max(max_index, src, dst)
    n = declared_n if declared_n is not None else max_index + 1
    if declared_n is not None and max_index >= declared_n:
        raise IndexOutOfRange(f"index {max_index} outside declared n={declared_n}")
    if n < MIN_PAGES:
        raise TooFewPages(f"need more than 2 pages, got n={n}")
    return webgraph_from_edges(n, edges)


def serialize_edge_list(g: WebGraph) -> str:
    """The canonical edge-list text: directive first, edges in (src, dst) order."""
    lines = [f"# n={g.n}"]
    lines.extend(f"{src} {dst}" for src, dst in g.edges())
    return "\n".join(lines) + "\n"


def generate_random_graph(n: int, edge_prob: float, seed: int) -> WebGraph:
    """Seeded G(n, p) digraph: each ordered pair (j, i), j != i, appears
    independently with probability edge_prob.  No self-loops."""
    if n < MIN_PAGES:
        raise TooFewPages(f"need more than 2 pages, got n={n}")
    if not 0.0 < edge_prob <= 1.0:
        raise InvalidProbability(f"edge_prob must lie in (0, 1], got {edge_prob}")
    rng = philox_stream(seed, stream=0)
    out_links = []
    for j in range(n):
        draws = rng.random(n)
        targets = np.nonzero(draws < edge_prob)[0]
        out_links.append(tuple(int(i) for i in targets if i != j))
    return WebGraph(n=n, out_links=tuple(out_links))


def build_link_matrix(
    g: WebGraph, policy: DanglingPolicy = DanglingPolicy.UNIFORM
) -> ColumnStochasticMatrix:
    """Column-stochastic link matrix of the graph.

    Column j holds 1/n_j at each out-neighbor of page j; zero columns
    are repaired per the dangling policy.
    """
    n = g.n
    columns = []
    all_rows = None
    for j in range(n):
        targets = g.out_links[j]
        if targets:
            w = 1.0 / len(targets)
            columns.append((np.array(targets, dtype=np.int64), np.full(len(targets), w)))
        elif policy is DanglingPolicy.UNIFORM:
            if all_rows is None:
                all_rows = np.arange(n, dtype=np.int64)
            columns.append((all_rows, np.full(n, 1.0 / n)))
        elif policy is DanglingPolicy.SELFLOOP:
            columns.append((np.array([j], dtype=np.int64), np.array([1.0])))
        else:
            raise DanglingNode(f"page {j} has no out-links")
    return ColumnStochasticMatrix.from_columns(n, columns)
