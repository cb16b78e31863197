import numpy as np
import pytest

from pagerank_lab.errors import DimensionMismatch, InvalidMatrix
from pagerank_lab.graph import build_link_matrix
from pagerank_lab.matrix import ColumnStochasticMatrix

from conftest import seeded_graphs


def _halves():
    return ColumnStochasticMatrix.from_columns(
        3, [([0, 1], [0.5, 0.5]), ([1, 2], [0.5, 0.5]), ([0, 2], [0.5, 0.5])]
    )


def test_from_columns_and_validate():
    A = _halves()
    A.validate()
    assert A.nnz == 6
    rows, vals = A.column(1)
    assert list(rows) == [1, 2] and list(vals) == [0.5, 0.5]


def test_validate_catches_column_sum():
    A = ColumnStochasticMatrix.from_columns(
        3, [([0], [0.9]), ([1], [1.0]), ([2], [1.0])]
    )
    with pytest.raises(InvalidMatrix, match="column 0"):
        A.validate()


def test_validate_catches_entry_range():
    neg = ColumnStochasticMatrix.from_columns(
        3, [([0, 1], [1.1, -0.1]), ([1], [1.0]), ([2], [1.0])]
    )
    with pytest.raises(InvalidMatrix, match="entry"):
        neg.validate()


def test_validate_catches_unsorted_rows():
    bad = ColumnStochasticMatrix.from_columns(
        3, [([1, 0], [0.5, 0.5]), ([1], [1.0]), ([2], [1.0])]
    )
    with pytest.raises(InvalidMatrix, match="strictly increasing"):
        bad.validate()


def test_matvec_matches_dense():
    rng = np.random.default_rng(5)
    for g in seeded_graphs(10, (3, 25), 0.3, base_seed=50):
        A = build_link_matrix(g)
        dense = A.to_dense()
        x = rng.random(g.n)
        assert np.abs(A.matvec(x) - dense @ x).max() < 1e-14


def test_matvec_dimension_check():
    with pytest.raises(DimensionMismatch):
        _halves().matvec(np.ones(4))


def test_csr_agrees_with_dense():
    for g in seeded_graphs(6, (3, 20), 0.3, base_seed=9):
        A = build_link_matrix(g)
        dense = A.to_dense()
        indptr, cols, vals = A.csr
        rebuilt = np.zeros_like(dense)
        for i in range(A.n):
            lo, hi = indptr[i], indptr[i + 1]
            rebuilt[i, cols[lo:hi]] = vals[lo:hi]
        assert np.array_equal(rebuilt, dense)


def test_row_dense(cycle3_matrix):
    assert np.array_equal(cycle3_matrix.row_dense(0), np.array([0.0, 0.0, 1.0]))


def test_dense_round_trip():
    A = _halves()
    B = ColumnStochasticMatrix.from_dense(A.to_dense())
    assert A.equals_exact(B)


def test_equals_exact_detects_value_change():
    A = _halves()
    B = ColumnStochasticMatrix(
        n=A.n, indptr=A.indptr.copy(), rows=A.rows.copy(), vals=A.vals.copy()
    )
    assert A.equals_exact(B)
    B.vals[0] = np.nextafter(B.vals[0], 1.0)
    assert not A.equals_exact(B)
