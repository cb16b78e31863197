"""Sparse column-stochastic matrices in compressed-column storage."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionMismatch, InvalidMatrix

COLUMN_SUM_TOL = 1e-12
ENTRY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ColumnStochasticMatrix:
    """n-by-n sparse matrix whose columns each sum to one.

    Storage is the usual compressed-sparse-column triplet: ``indptr``
    (length n+1), ``rows`` and ``vals`` (length nnz).  Row indices are
    strictly increasing inside every column.  Instances are immutable
    and safe to share between threads; ``validate`` checks the
    invariants explicitly rather than on construction so that tests can
    build deliberately corrupted matrices.
    """

    n: int
    indptr: np.ndarray
    rows: np.ndarray
    vals: np.ndarray

    @property
    def nnz(self) -> int:
        return int(self.indptr[-1])

    def column(self, j: int) -> tuple[np.ndarray, np.ndarray]:
        """Row indices and values of column j (views, do not mutate)."""
        lo, hi = self.indptr[j], self.indptr[j + 1]
        return self.rows[lo:hi], self.vals[lo:hi]

    @cached_property
    def _colind(self) -> np.ndarray:
        return np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Row-major view (indptr, cols, vals) of the same matrix."""
        order = np.lexsort((self._colind, self.rows))
        cols = self._colind[order]
        vals = self.vals[order]
        counts = np.bincount(self.rows, minlength=self.n)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return indptr, cols, vals

    def row_dense(self, i: int) -> np.ndarray:
        """Row i as a dense vector."""
        indptr, cols, vals = self.csr
        out = np.zeros(self.n)
        lo, hi = indptr[i], indptr[i + 1]
        out[cols[lo:hi]] = vals[lo:hi]
        return out

    def matvec(self, x: np.ndarray) -> np.ndarray:
        if x.shape != (self.n,):
            raise DimensionMismatch(f"expected vector of length {self.n}, got shape {x.shape}")
        return np.bincount(self.rows, weights=self.vals * x[self._colind], minlength=self.n)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n, self.n))
        out[self.rows, self._colind] = self.vals
        return out

    def column_sums(self) -> np.ndarray:
        return np.bincount(self._colind, weights=self.vals, minlength=self.n)

    def validate(self, tol: float = COLUMN_SUM_TOL) -> None:
        """Raise InvalidMatrix unless all invariants hold.

        Entry bounds get ENTRY_TOL of rounding slack; the exact-zero
        and exact-one boundary cases are legitimate values.
        """
        if self.indptr.shape != (self.n + 1,) or self.indptr[0] != 0:
            raise InvalidMatrix("indptr must have length n+1 and start at 0")
        if np.any(np.diff(self.indptr) < 0):
            raise InvalidMatrix("indptr must be non-decreasing")
        if self.rows.shape != self.vals.shape or self.rows.shape != (self.nnz,):
            raise InvalidMatrix("rows/vals length must equal nnz")
        if self.nnz and (self.rows.min() < 0 or self.rows.max() >= self.n):
            raise InvalidMatrix("row index out of range")
        for j in range(self.n):
            lo, hi = self.indptr[j], self.indptr[j + 1]
            if hi - lo > 1 and np.any(np.diff(self.rows[lo:hi]) <= 0):
                raise InvalidMatrix(f"rows not strictly increasing in column {j}")
        if self.nnz:
            lo_val, hi_val = self.vals.min(), self.vals.max()
            if lo_val < -ENTRY_TOL or hi_val > 1.0 + ENTRY_TOL:
                raise InvalidMatrix(f"entry outside [0,1]: min={lo_val!r} max={hi_val!r}")
        sums = self.column_sums()
        worst = float(np.abs(sums - 1.0).max()) if self.n else 0.0
        if worst > tol:
            j = int(np.abs(sums - 1.0).argmax())
            raise InvalidMatrix(f"column {j} sums to {sums[j]!r}, off by {worst:.3e}")

    def equals_exact(self, other: "ColumnStochasticMatrix") -> bool:
        """Bit-level equality of the sparse structure and values."""
        return (
            self.n == other.n
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.rows, other.rows)
            and np.array_equal(self.vals, other.vals)
        )

    @staticmethod
    def from_columns(n: int, columns) -> "ColumnStochasticMatrix":
        """Assemble from per-column (row_indices, values) pairs."""
        indptr = np.zeros(n + 1, dtype=np.int64)
        row_parts = []
        val_parts = []
        for j, (rows, vals) in enumerate(columns):
            if len(rows) != len(vals):
                raise InvalidMatrix(f"column {j}: rows/vals length mismatch")
            indptr[j + 1] = indptr[j] + len(rows)
            row_parts.append(np.asarray(rows, dtype=np.int64))
            val_parts.append(np.asarray(vals, dtype=np.float64))
        rows = np.concatenate(row_parts) if row_parts else np.empty(0, dtype=np.int64)
        vals = np.concatenate(val_parts) if val_parts else np.empty(0, dtype=np.float64)
        return ColumnStochasticMatrix(n=n, indptr=indptr, rows=rows, vals=vals)

    @staticmethod
    def from_dense(arr: np.ndarray, drop_tol: float = 0.0) -> "ColumnStochasticMatrix":
        arr = np.asarray(arr, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DimensionMismatch(f"expected square matrix, got shape {arr.shape}")
        n = arr.shape[0]
        cols = []
        for j in range(n):
            nz = np.nonzero(np.abs(arr[:, j]) > drop_tol)[0]
            cols.append((nz, arr[nz, j]))
        return ColumnStochasticMatrix.from_columns(n, cols)
