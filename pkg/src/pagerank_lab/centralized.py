"""Centralized PageRank: teleport-mixed matrix, Power Method, oracle.

The teleport mix of a link matrix A with weight alpha is
(1-alpha)*A + (alpha/n)*S where S is all ones.  Applied to a
probability vector x the S term collapses to a constant, so the
matrix-free update is (1-alpha)*A*x + (alpha/n)*1.  The Power Method
iterates that map; at tolerance 1e-13 its output serves as the
reference ranking for every statistical test in the package.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import (
    DenseLimitExceeded,
    DimensionMismatch,
    InvalidAlpha,
    NotConverged,
    NotProbabilityVector,
)
from .graph import DanglingPolicy, WebGraph, build_link_matrix
from .matrix import ColumnStochasticMatrix

DENSE_LIMIT = 512
MAX_DENSE_LIMIT = 100_000
ORACLE_TOL = 1e-13
ENTRY_FLOOR = -1e-12
SUM_TOL = 1e-9


def check_alpha(alpha: float) -> float:
    if not 0.0 < alpha < 1.0:
        raise InvalidAlpha(f"alpha must lie strictly in (0, 1), got {alpha}")
    return float(alpha)


def check_probability_vector(x, n: int | None = None) -> np.ndarray:
    """Validate and return x as a float64 probability vector.

    Entries may dip to -1e-12 from rounding; the sum must be within
    1e-9 of one.  Never renormalizes.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise NotProbabilityVector(f"expected 1-d vector, got shape {x.shape}")
    if n is not None and x.shape != (n,):
        raise DimensionMismatch(f"expected length {n}, got {x.shape[0]}")
    if x.size and float(x.min()) < ENTRY_FLOOR:
        raise NotProbabilityVector(f"entry {x.min()!r} below {ENTRY_FLOOR}")
    total = float(x.sum())
    if abs(total - 1.0) > SUM_TOL:
        raise NotProbabilityVector(f"entries sum to {total!r}, not 1")
    return x


def uniform_vector(n: int) -> np.ndarray:
    return np.full(n, 1.0 / n)


def check_dense_limit(n: int, dense_limit: int) -> None:
    if dense_limit > MAX_DENSE_LIMIT:
        raise DenseLimitExceeded(
            f"dense_limit {dense_limit} above hard cap {MAX_DENSE_LIMIT}"
        )
    if n > dense_limit:
        raise DenseLimitExceeded(f"n={n} exceeds dense limit {dense_limit}")


def apply_google(A: ColumnStochasticMatrix, alpha: float, x: np.ndarray) -> np.ndarray:
    """One teleport-mixed step: (1-alpha)*A*x + (alpha/n)*1.

    Equals the dense mixed matrix applied to x because x sums to one.
    """
    check_alpha(alpha)
    x = check_probability_vector(x, A.n)
    return (1.0 - alpha) * A.matvec(x) + alpha / A.n


def power_method(
    A: ColumnStochasticMatrix,
    alpha: float = 0.15,
    x0: np.ndarray | None = None,
    tol: float = ORACLE_TOL,
    max_iter: int = 100_000,
) -> tuple[np.ndarray, int]:
    """Iterate the teleport-mixed map until the L1 step difference is <= tol.

    Returns (x, iterations).  The map contracts L1 distances by at
    least (1-alpha) per step, so the fixed-point residual of the
    result is itself below tol.  Raises NotConverged with the best
    iterate attached when max_iter is exhausted.
    """
    check_alpha(alpha)
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be at least 1, got {max_iter}")
    x = uniform_vector(A.n) if x0 is None else check_probability_vector(x0, A.n)
    for it in range(1, max_iter + 1):
        x_next = apply_google(A, alpha, x)
        diff = float(np.abs(x_next - x).sum())
        x = x_next
        if diff <= tol:
            return x, it
    raise NotConverged(
        f"no convergence to tol={tol} within {max_iter} iterations",
        best=x,
        iterations=max_iter,
    )


def google_matrix_dense(
    A: ColumnStochasticMatrix, alpha: float, dense_limit: int = DENSE_LIMIT
) -> np.ndarray:
    """The dense teleport-mixed matrix (1-alpha)*A + (alpha/n)*S.

    Exists for identity verification only; refuses above dense_limit.
    """
    check_alpha(alpha)
    check_dense_limit(A.n, dense_limit)
    return (1.0 - alpha) * A.to_dense() + alpha / A.n


@lru_cache(maxsize=64)
def _oracle_cached(g: WebGraph, alpha: float, policy: DanglingPolicy) -> np.ndarray:
    A = build_link_matrix(g, policy)
    x, _ = power_method(A, alpha, tol=ORACLE_TOL)
    x.setflags(write=False)
    return x


def pagerank_oracle(
    g: WebGraph,
    alpha: float = 0.15,
    policy: DanglingPolicy = DanglingPolicy.UNIFORM,
) -> np.ndarray:
    """High-precision reference ranking, cached per (graph, alpha, policy).

    The returned array is read-only; copy before mutating.
    """
    check_alpha(alpha)
    return _oracle_cached(g, float(alpha), policy)
