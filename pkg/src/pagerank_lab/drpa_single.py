"""One-page-at-a-time distributed randomized PageRank.

Each step picks one page uniformly at random; that page exchanges
value with its in- and out-neighbors through a sparse local link
matrix while every other page keeps a complementary share of its own
value.  The running average of the iterates is the estimate that
converges to the centralized ranking.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .centralized import check_alpha, check_dense_limit, check_probability_vector, uniform_vector
from .centralized import DENSE_LIMIT, google_matrix_dense, pagerank_oracle
from .errors import DimensionMismatch, IndexOutOfRange, TooFewPages
from .graph import WebGraph, build_link_matrix
from .matrix import ColumnStochasticMatrix
from .rng import philox_stream
from .schedules import resolve_schedule
from .trajectory import RunMeta, Trajectory, TrajectorySample

THETA_CHUNK = 4_000_000


def alpha1(alpha: float, n: int) -> float:
    """Teleport weight for the one-page protocol: 2*alpha / (n - alpha*(n-2)).

    Always lies in (0, 1); chosen so the protocol's expected update
    shares the centralized matrix's top eigenvector.
    """
    check_alpha(alpha)
    if n <= 2:
        raise TooFewPages(f"need more than 2 pages, got n={n}")
    return 2.0 * alpha / (n - alpha * (n - 2))


def build_distributed_link_matrix(A: ColumnStochasticMatrix, i: int) -> ColumnStochasticMatrix:
    """Sparse local link matrix for page i.

    Row i and column i copy the link matrix; every other diagonal
    entry (l, l) is 1 - a[i, l].  Exact zeros are not stored.
    """
    n = A.n
    if not 0 <= i < n:
        raise IndexOutOfRange(f"page index {i} outside [0, {n})")
    row_i = A.row_dense(i)
    columns = []
    for l in range(n):
        if l == i:
            rows, vals = A.column(i)
            columns.append((rows.copy(), vals.copy()))
            continue
        rows = []
        vals = []
        a_il = row_i[l]
        diag = 1.0 - a_il
        if i < l:
            if a_il != 0.0:
                rows.append(i)
                vals.append(a_il)
            if diag != 0.0:
                rows.append(l)
                vals.append(diag)
        else:
            if diag != 0.0:
                rows.append(l)
                vals.append(diag)
            if a_il != 0.0:
                rows.append(i)
                vals.append(a_il)
        columns.append((rows, vals))
    return ColumnStochasticMatrix.from_columns(n, columns)


def apply_distributed_link(A: ColumnStochasticMatrix, i: int, x: np.ndarray) -> np.ndarray:
    """Apply page i's local link matrix without building it.

    Costs O(nnz of row i + nnz of column i + n).
    """
    n = A.n
    if not 0 <= i < n:
        raise IndexOutOfRange(f"page index {i} outside [0, {n})")
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (n,):
        raise DimensionMismatch(f"expected vector of length {n}, got shape {x.shape}")
    indptr_r, cols, vals_r = A.csr
    lo, hi = indptr_r[i], indptr_r[i + 1]
    row_cols = cols[lo:hi]
    row_vals = vals_r[lo:hi]
    col_rows, col_vals = A.column(i)
    y = x.copy()
    y[row_cols] -= row_vals * x[row_cols]
    y[col_rows] += col_vals * x[i]
    y[i] = float(row_vals @ x[row_cols]) if row_vals.size else 0.0
    return y


@dataclass
class DrpaSingleState:
    """Protocol state: step index, iterate, running average, generator."""

    k: int
    x: np.ndarray
    x_bar: np.ndarray
    rng: np.random.Generator


def initial_single_state(
    n: int, seed: int, stream: int = 0, x0: np.ndarray | None = None
) -> DrpaSingleState:
    x = uniform_vector(n) if x0 is None else check_probability_vector(x0, n).copy()
    return DrpaSingleState(k=0, x=x, x_bar=x.copy(), rng=philox_stream(seed, stream))


def drpa_single_step(
    state: DrpaSingleState,
    A: ColumnStochasticMatrix,
    a1: float,
    theta: int | None = None,
) -> DrpaSingleState:
    """One protocol step.

    Draws the updating page from the state's generator (or uses the
    forced theta, a testing hook), applies the local link matrix with
    teleport weight a1, and folds the pre-step iterate into the
    running average with gain 1/(k+1).
    """
    n = A.n
    if theta is None:
        theta = int(state.rng.integers(0, n))
    x_old = state.x
    y = apply_distributed_link(A, theta, x_old)
    g = 1.0 / (state.k + 1)
    x_bar = state.x_bar - (state.x_bar - x_old) * g
    x = (1.0 - a1) * y + a1 / n
    return DrpaSingleState(k=state.k + 1, x=x, x_bar=x_bar, rng=state.rng)


@dataclass(frozen=True)
class SingleRunResult:
    """Sampled iterates of one seeded run.

    ks are the sampled step counts; row r of x_samples / x_bar_samples
    holds the iterate and running average after ks[r] steps.
    mean_drift is the worst L1 gap between the recursive average and a
    compensated-summation audit at the sampled steps.
    """

    ks: np.ndarray
    x_samples: np.ndarray
    x_bar_samples: np.ndarray
    final_x: np.ndarray
    final_x_bar: np.ndarray
    mean_drift: float


def simulate_single(
    A: ColumnStochasticMatrix,
    alpha: float,
    steps: int,
    seed: int,
    schedule="geometric",
    stream: int = 0,
    x0: np.ndarray | None = None,
) -> SingleRunResult:
    """Run the protocol for `steps` steps on stream (seed, stream).

    Deterministic: identical arguments give identical results on every
    platform and run.
    """
    from . import _kernels

    if steps < 1:
        raise ValueError(f"steps must be at least 1, got {steps}")
    n = A.n
    a1 = alpha1(alpha, n)
    sched = resolve_schedule(schedule, steps)
    rng = philox_stream(seed, stream)
    x = uniform_vector(n) if x0 is None else check_probability_vector(x0, n).copy()
    xbar = x.copy()
    y = np.empty(n)
    ksum = np.zeros(n)
    kcomp = np.zeros(n)
    out_x = np.empty((sched.size, n))
    out_xbar = np.empty((sched.size, n))
    drift = np.zeros(1)
    indptr_c, rows_c, vals_c = A.indptr, A.rows, A.vals
    indptr_r, cols_r, vals_r = A.csr
    sptr = 0
    done = 0
    while done < steps:
        m = min(THETA_CHUNK, steps - done)
        theta = rng.integers(0, n, size=m)
        sptr = _kernels.single_chunk(
            indptr_c, rows_c, vals_c, indptr_r, cols_r, vals_r,
            theta, 1.0 - a1, a1 / n, done,
            x, xbar, y, ksum, kcomp,
            sched, sptr, out_x, out_xbar, drift,
        )
        done += m
    return SingleRunResult(
        ks=sched,
        x_samples=out_x,
        x_bar_samples=out_xbar,
        final_x=x,
        final_x_bar=xbar,
        mean_drift=float(drift[0]),
    )


def expected_single_matrix(
    A: ColumnStochasticMatrix, alpha: float, dense_limit: int = DENSE_LIMIT
) -> tuple[np.ndarray, float]:
    """Expected one-page update matrix, built from the definition.

    Averages all n local link matrices, mixes in the teleport term,
    and reports the max-entry deviation from the closed form
    (a1/alpha)*M + (1 - a1/alpha)*I, which is an exact identity.
    """
    check_dense_limit(A.n, dense_limit)
    n = A.n
    a1 = alpha1(alpha, n)
    avg = np.zeros((n, n))
    for i in range(n):
        avg += build_distributed_link_matrix(A, i).to_dense()
    avg /= n
    m1 = (1.0 - a1) * avg + a1 / n
    m = google_matrix_dense(A, alpha, dense_limit)
    ratio = a1 / alpha
    closed = ratio * m + (1.0 - ratio) * np.eye(n)
    residual = float(np.abs(m1 - closed).max())
    return m1, residual


def trajectory_from_run(
    ks: np.ndarray,
    x_bar_samples: np.ndarray,
    final_x_bar: np.ndarray,
    oracle: np.ndarray,
    meta: RunMeta,
) -> Trajectory:
    """Fold sampled averages into error records against the oracle."""
    diffs = x_bar_samples - oracle
    err1 = np.abs(diffs).sum(axis=1)
    err2 = np.sqrt((diffs * diffs).sum(axis=1))
    samples = tuple(
        TrajectorySample(k=int(k), err_l1=float(e1), err_l2=float(e2), sigma=0)
        for k, e1, e2 in zip(ks, err1, err2)
    )
    return Trajectory(meta=meta, samples=samples, final_x_bar=tuple(float(v) for v in final_x_bar))


def run_drpa_single(
    g: WebGraph,
    alpha: float,
    steps: int,
    seed: int,
    schedule="geometric",
    graph_source: str = "inline",
    stream: int = 0,
) -> Trajectory:
    """Seeded one-page run recorded as errors against the cached oracle."""
    A = build_link_matrix(g)
    oracle = pagerank_oracle(g, alpha)
    res = simulate_single(A, alpha, steps, seed, schedule, stream)
    meta = RunMeta(
        graph_source=graph_source,
        alpha=float(alpha),
        beta=None,
        seed=int(seed),
        steps=int(steps),
        protocol="single",
        schedule=schedule if isinstance(schedule, str) else "custom",
    )
    return trajectory_from_run(res.ks, res.x_bar_samples, res.final_x_bar, oracle, meta)
