import numpy as np
import pytest

from pagerank_lab.errors import (
    DanglingNode,
    IndexOutOfRange,
    InvalidProbability,
    MalformedLine,
    TooFewPages,
)
from pagerank_lab.graph import (
    DanglingPolicy,
    WebGraph,
    build_link_matrix,
    generate_random_graph,
    parse_edge_list,
    serialize_edge_list,
    webgraph_from_edges,
)

from conftest import seeded_graphs


def test_parse_cycle():
    g = parse_edge_list("0 1\n1 2\n2 0")
    assert g.n == 3
    assert g.out_links == ((1,), (2,), (0,))


def test_parse_directive_fixes_n():
    g = parse_edge_list("# n=4\n0 1")
    assert g.n == 4
    assert g.out_links == ((1,), (), (), ())


def test_parse_index_beyond_directive():
    with pytest.raises(IndexOutOfRange):
        parse_edge_list("# n=3\n0 3")


def test_parse_comments_and_blank_lines():
    g = parse_edge_list("# a comment\n\n0 1\n# another\n1 2\n2 0\n")
    assert g.n == 3
    assert g.edge_count == 3


@pytest.mark.parametrize("text", ["0 1 2", "0", "a b", "0 x", "-1 2"])
def test_parse_malformed(text):
    with pytest.raises(MalformedLine):
        parse_edge_list(text)


@pytest.mark.parametrize("text", ["", "0 1", "# n=2\n0 1"])
def test_parse_too_few_pages(text):
    with pytest.raises(TooFewPages):
        parse_edge_list(text)


def test_parse_collapses_duplicates():
    g = parse_edge_list("0 1\n0 1\n1 2\n2 0")
    assert g.out_links[0] == (1,)
    assert g.edge_count == 3


def test_self_loop_counts_in_out_degree():
    g = parse_edge_list("0 0\n0 1\n1 2\n2 0")
    assert g.out_links[0] == (0, 1)
    assert g.out_degree(0) == 2


def test_webgraph_rejects_bad_targets():
    with pytest.raises(IndexOutOfRange):
        webgraph_from_edges(3, [(0, 5)])
    with pytest.raises(IndexOutOfRange):
        WebGraph(n=3, out_links=((1, 1), (), ()))  # duplicate target
    with pytest.raises(TooFewPages):
        WebGraph(n=2, out_links=((), ()))


def test_round_trip_serialization():
    for g in seeded_graphs(20, (3, 40), 0.3, base_seed=100):
        assert parse_edge_list(serialize_edge_list(g)) == g


def test_serializer_layout():
    g = webgraph_from_edges(3, [(2, 0), (0, 1), (1, 2)])
    assert serialize_edge_list(g) == "# n=3\n0 1\n1 2\n2 0\n"


def test_generate_deterministic():
    a = generate_random_graph(5, 0.4, 42)
    b = generate_random_graph(5, 0.4, 42)
    assert a == b
    c = generate_random_graph(5, 0.4, 43)
    assert a != c


def test_generate_complete_graph():
    g = generate_random_graph(5, 1.0, 7)
    assert g.edge_count == 20
    for j in range(5):
        assert j not in g.out_links[j]


def test_generate_preconditions():
    with pytest.raises(TooFewPages):
        generate_random_graph(2, 0.5, 1)
    with pytest.raises(InvalidProbability):
        generate_random_graph(5, 0.0, 1)
    with pytest.raises(InvalidProbability):
        generate_random_graph(5, 1.5, 1)


def test_link_matrix_cycle(cycle3):
    A = build_link_matrix(cycle3)
    dense = A.to_dense()
    assert np.array_equal(dense, np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=float))


def test_link_matrix_uniform_patch(chain3):
    A = build_link_matrix(chain3, DanglingPolicy.UNIFORM)
    rows, vals = A.column(2)
    assert list(rows) == [0, 1, 2]
    assert np.allclose(vals, 1.0 / 3.0, rtol=0, atol=0)


def test_link_matrix_selfloop_patch(chain3):
    A = build_link_matrix(chain3, DanglingPolicy.SELFLOOP)
    rows, vals = A.column(2)
    assert list(rows) == [2] and vals[0] == 1.0


def test_link_matrix_reject_policy(chain3):
    with pytest.raises(DanglingNode):
        build_link_matrix(chain3, DanglingPolicy.REJECT)


def test_link_matrix_always_validates():
    for g in seeded_graphs(15, (3, 30), 0.15, base_seed=7):
        for policy in (DanglingPolicy.UNIFORM, DanglingPolicy.SELFLOOP):
            build_link_matrix(g, policy).validate()


def test_link_matrix_deterministic(chain3):
    a = build_link_matrix(chain3)
    b = build_link_matrix(chain3)
    assert a.equals_exact(b)
