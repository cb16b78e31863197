"""Simultaneous-update distributed randomized PageRank.

At every step each page independently flips a Bernoulli(beta) coin;
the set of updating pages induces one of 2**n sparse link matrices.
Updating rows take their full link-matrix row, idle pages keep
1 - (selected-row column sum) of their own value, and everything else
is zero.  With the matching teleport weight the expected update again
shares the centralized matrix's top eigenvector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .centralized import (
    DENSE_LIMIT,
    check_alpha,
    check_dense_limit,
    check_probability_vector,
    google_matrix_dense,
    uniform_vector,
)
from .centralized import pagerank_oracle
from .errors import DimensionMismatch, EnumerationLimitExceeded, InvalidBeta
from .graph import WebGraph, build_link_matrix
from .matrix import ColumnStochasticMatrix
from .rng import philox_stream
from .schedules import resolve_schedule
from .trajectory import RunMeta, Trajectory

ENUM_LIMIT = 12
PATTERN_CHUNK_VALUES = 2_000_000
DIAG_SNAP_TOL = 1e-12


def check_beta(beta: float) -> float:
    if not 0.0 < beta <= 1.0:
        raise InvalidBeta(f"beta must lie in (0, 1], got {beta}")
    return float(beta)


def alpha2(alpha: float, beta: float) -> float:
    """Teleport weight for the simultaneous protocol.

    alpha * (1 - (1-beta)^2) / (1 - alpha*(1-beta)^2); collapses to
    alpha exactly at beta = 1 and lies in (0, alpha].
    """
    check_alpha(alpha)
    check_beta(beta)
    q = (1.0 - beta) ** 2
    return alpha * (1.0 - q) / (1.0 - alpha * q)


def sample_update_pattern(beta: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw n independent Bernoulli(beta) indicator bits."""
    check_beta(beta)
    return (rng.random(n) < beta).astype(np.uint8)


def check_update_pattern(pattern, n: int) -> np.ndarray:
    p = np.asarray(pattern)
    if p.shape != (n,):
        raise DimensionMismatch(f"pattern must have length {n}, got shape {p.shape}")
    if not np.all((p == 0) | (p == 1)):
        raise ValueError("pattern entries must be exactly 0 or 1")
    return p.astype(np.uint8)


def _diag_value(s_j: float) -> float:
    # subset column sums can overshoot 1 by rounding; snap tiny negatives
    d = 1.0 - s_j
    if -DIAG_SNAP_TOL < d < 0.0:
        return 0.0
    return d


def build_multi_link_matrix(A: ColumnStochasticMatrix, pattern) -> ColumnStochasticMatrix:
    """Sparse link matrix of one update pattern.

    At the one-hot pattern e_i this reproduces the one-page matrix of
    build_distributed_link_matrix bit for bit.
    """
    n = A.n
    p = check_update_pattern(pattern, n)
    columns = []
    for j in range(n):
        rows, vals = A.column(j)
        if p[j]:
            columns.append((rows.copy(), vals.copy()))
            continue
        keep = p[rows] == 1
        kept_rows = rows[keep]
        kept_vals = vals[keep]
        s_j = float(kept_vals.sum())
        diag = _diag_value(s_j)
        if diag == 0.0:
            columns.append((kept_rows, kept_vals))
            continue
        pos = int(np.searchsorted(kept_rows, j))
        columns.append(
            (
                np.insert(kept_rows, pos, j),
                np.insert(kept_vals, pos, diag),
            )
        )
    return ColumnStochasticMatrix.from_columns(n, columns)


def apply_multi_link(A: ColumnStochasticMatrix, pattern, x: np.ndarray) -> np.ndarray:
    """Apply one pattern's link matrix without building it.

    Two restricted matrix-vector products plus a selected-row column
    sum: O(nnz + n) per call.
    """
    n = A.n
    p = check_update_pattern(pattern, n)
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (n,):
        raise DimensionMismatch(f"expected vector of length {n}, got shape {x.shape}")
    sel = p.astype(bool)
    u = np.where(sel, x, 0.0)
    v_sel = A.matvec(u)
    v_unsel = A.matvec(x - u)
    row_sel = A.vals * sel[A.rows]
    s = np.bincount(A._colind, weights=row_sel, minlength=n)
    return np.where(sel, v_sel + v_unsel, v_sel + (1.0 - s) * x)


def dense_multi_link_matrix(a_dense: np.ndarray, pattern) -> np.ndarray:
    """Dense pattern matrix straight from the case definition."""
    n = a_dense.shape[0]
    p = check_update_pattern(pattern, n)
    sel = p.astype(bool)
    ap = np.where(sel[:, None] | sel[None, :], a_dense, 0.0)
    s = a_dense[sel, :].sum(axis=0)
    idle = np.nonzero(~sel)[0]
    for i in idle:
        ap[i, i] = _diag_value(float(s[i]))
    return ap


def expected_multi_matrix(
    A: ColumnStochasticMatrix,
    alpha: float,
    beta: float,
    enum_limit: int = ENUM_LIMIT,
) -> tuple[np.ndarray, float]:
    """Expected simultaneous-update matrix via full 2**n enumeration.

    Weights each pattern by beta^|p| * (1-beta)^(n-|p|), mixes in the
    teleport term, and reports the max-entry deviation from the closed
    form (a2/alpha)*M + (1 - a2/alpha)*I, an exact identity.
    """
    check_alpha(alpha)
    check_beta(beta)
    n = A.n
    if n > enum_limit:
        raise EnumerationLimitExceeded(f"n={n} exceeds enumeration limit {enum_limit}")
    a2 = alpha2(alpha, beta)
    a_dense = A.to_dense()
    acc = np.zeros((n, n))
    for mask in range(2**n):
        p = np.array([(mask >> i) & 1 for i in range(n)], dtype=np.uint8)
        pop = int(p.sum())
        w = beta**pop * (1.0 - beta) ** (n - pop)
        if w == 0.0:
            continue
        acc += w * dense_multi_link_matrix(a_dense, p)
    m2 = (1.0 - a2) * acc + a2 / n
    m = google_matrix_dense(A, alpha, dense_limit=max(DENSE_LIMIT, n))
    ratio = a2 / alpha
    closed = ratio * m + (1.0 - ratio) * np.eye(n)
    residual = float(np.abs(m2 - closed).max())
    return m2, residual


@dataclass(frozen=True)
class MultiRunResult:
    """Sampled iterates of one seeded simultaneous-update run."""

    ks: np.ndarray
    x_samples: np.ndarray
    x_bar_samples: np.ndarray
    final_x: np.ndarray
    final_x_bar: np.ndarray
    mean_drift: float


def simulate_multi(
    A: ColumnStochasticMatrix,
    alpha: float,
    beta: float,
    steps: int,
    seed: int,
    schedule="geometric",
    stream: int = 0,
    x0: np.ndarray | None = None,
) -> MultiRunResult:
    """Run the simultaneous protocol for `steps` steps on stream (seed, stream)."""
    from . import _kernels

    if steps < 1:
        raise ValueError(f"steps must be at least 1, got {steps}")
    n = A.n
    a2 = alpha2(alpha, beta)
    sched = resolve_schedule(schedule, steps)
    rng = philox_stream(seed, stream)
    x = uniform_vector(n) if x0 is None else check_probability_vector(x0, n).copy()
    xbar = x.copy()
    y = np.empty(n)
    v_sel = np.empty(n)
    v_unsel = np.empty(n)
    s = np.empty(n)
    ksum = np.zeros(n)
    kcomp = np.zeros(n)
    out_x = np.empty((sched.size, n))
    out_xbar = np.empty((sched.size, n))
    drift = np.zeros(1)
    indptr_c, rows_c, vals_c = A.indptr, A.rows, A.vals
    indptr_r, cols_r, vals_r = A.csr
    chunk = max(1024, PATTERN_CHUNK_VALUES // n)
    sptr = 0
    done = 0
    while done < steps:
        m = min(chunk, steps - done)
        bits = rng.random((m, n)) < beta
        sptr = _kernels.multi_chunk(
            indptr_c, rows_c, vals_c, indptr_r, cols_r, vals_r,
            bits, 1.0 - a2, a2 / n, done,
            x, xbar, y, v_sel, v_unsel, s, ksum, kcomp,
            sched, sptr, out_x, out_xbar, drift,
        )
        done += m
    return MultiRunResult(
        ks=sched,
        x_samples=out_x,
        x_bar_samples=out_xbar,
        final_x=x,
        final_x_bar=xbar,
        mean_drift=float(drift[0]),
    )


def run_drpa_multi(
    g: WebGraph,
    alpha: float,
    beta: float,
    steps: int,
    seed: int,
    schedule="geometric",
    graph_source: str = "inline",
    stream: int = 0,
) -> Trajectory:
    """Seeded simultaneous-update run recorded as errors against the oracle."""
    from .drpa_single import trajectory_from_run

    A = build_link_matrix(g)
    oracle = pagerank_oracle(g, alpha)
    res = simulate_multi(A, alpha, beta, steps, seed, schedule, stream)
    meta = RunMeta(
        graph_source=graph_source,
        alpha=float(alpha),
        beta=float(beta),
        seed=int(seed),
        steps=int(steps),
        protocol="multi",
        schedule=schedule if isinstance(schedule, str) else "custom",
    )
    return trajectory_from_run(res.ks, res.x_bar_samples, res.final_x_bar, oracle, meta)
