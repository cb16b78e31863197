import numpy as np
import pytest

from pagerank_lab.graph import build_link_matrix, generate_random_graph, webgraph_from_edges


@pytest.fixture
def cycle3():
    """Directed 3-cycle 0 -> 1 -> 2 -> 0."""
    return webgraph_from_edges(3, [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def chain3():
    """0 -> 1 -> 2 with page 2 dangling."""
    return webgraph_from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def cycle3_matrix(cycle3):
    return build_link_matrix(cycle3)


@pytest.fixture
def chain3_matrix(chain3):
    return build_link_matrix(chain3)


# frozen output of the tol=1e-13 power iteration on chain3 at alpha=0.15,
# cross-checked against a dense eigen solve in test_centralized
CHAIN3_ORACLE = np.array([0.18441678192716257, 0.3411710465652343, 0.4744121715076025])


def seeded_graphs(count, n_range, edge_prob, base_seed):
    """Deterministic family of test graphs of varying sizes."""
    lo, hi = n_range
    out = []
    for i in range(count):
        n = lo + (i * 7) % (hi - lo + 1)
        out.append(generate_random_graph(max(n, 3), edge_prob, base_seed + i))
    return out
