"""Monte Carlo verification of the protocols' mean dynamics.

The expectation of the protocol iterate evolves by the expected update
matrix, so the empirical mean over many independent seeded runs must
match a dense matrix power of the start vector to within sampling
noise.  The report's max_z is the worst per-entry deviation in units
of the entry's standard error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .centralized import DENSE_LIMIT, check_dense_limit, uniform_vector
from .drpa_multi import ENUM_LIMIT, check_beta, expected_multi_matrix, simulate_multi
from .drpa_single import expected_single_matrix, simulate_single
from .graph import WebGraph, build_link_matrix

MAX_MEAN_STEP = 20
MIN_RUNS = 100


@dataclass(frozen=True)
class MonteCarloMeanReport:
    mean: np.ndarray
    predicted: np.ndarray
    std_err: np.ndarray
    max_z: float
    k: int
    runs: int
    protocol: str
    beta: float | None


def monte_carlo_mean(
    g: WebGraph,
    alpha: float,
    k: int,
    runs: int,
    base_seed: int,
    protocol: str = "single",
    beta: float | None = None,
    dense_limit: int = DENSE_LIMIT,
) -> MonteCarloMeanReport:
    """Empirical mean of the step-k iterate over independent streams.

    Run r draws from stream (base_seed, r); accumulation is in run
    order, so the report is bit-deterministic.
    """
    if k < 0 or k > MAX_MEAN_STEP:
        raise ValueError(f"k must lie in [0, {MAX_MEAN_STEP}], got {k}")
    if runs < MIN_RUNS:
        raise ValueError(f"runs must be at least {MIN_RUNS}, got {runs}")
    check_dense_limit(g.n, dense_limit)
    A = build_link_matrix(g)
    n = g.n
    x0 = uniform_vector(n)

    if protocol == "single":
        m_expected, _ = expected_single_matrix(A, alpha, dense_limit)
        beta_used = None
    elif protocol == "multi":
        beta_used = check_beta(0.5 if beta is None else beta)
        m_expected, _ = expected_multi_matrix(A, alpha, beta_used, ENUM_LIMIT)
    else:
        raise ValueError(f"unknown protocol {protocol!r}, expected 'single' or 'multi'")

    predicted = np.linalg.matrix_power(m_expected, k) @ x0

    if k == 0:
        finals = np.tile(x0, (runs, 1))
    else:
        finals = np.empty((runs, n))
        sched = np.empty(0, dtype=np.int64)
        for r in range(runs):
            if protocol == "single":
                res = simulate_single(A, alpha, k, base_seed, schedule=sched, stream=r)
            else:
                res = simulate_multi(A, alpha, beta_used, k, base_seed, schedule=sched, stream=r)
            finals[r] = res.final_x

    mean = finals.mean(axis=0)
    std = finals.std(axis=0, ddof=1)
    std_err = std / np.sqrt(runs)
    diff = np.abs(mean - predicted)
    z = np.zeros(n)
    nonzero = std_err > 0.0
    z[nonzero] = diff[nonzero] / std_err[nonzero]
    z[~nonzero & (diff > 0.0)] = np.inf
    return MonteCarloMeanReport(
        mean=mean,
        predicted=predicted,
        std_err=std_err,
        max_z=float(z.max()),
        k=k,
        runs=runs,
        protocol=protocol,
        beta=beta_used,
    )
