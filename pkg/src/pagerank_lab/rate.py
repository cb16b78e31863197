"""Empirical convergence-rate estimation.

The averaged estimate decays like a power of the step count; the
exponent is recovered as the ordinary least-squares slope of
log(error) against log(step).  A slope near -1/2 over a log-spaced
window is the desk-scale signature of the square-root rate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientSamples
from .trajectory import Trajectory, TrajectorySample

MIN_POINTS = 5


@dataclass(frozen=True)
class RateFit:
    slope: float
    intercept: float
    r_squared: float
    k_min: int
    k_max: int
    n_points: int
    zeros_excluded: int


def _samples(traj) -> tuple[TrajectorySample, ...]:
    if isinstance(traj, Trajectory):
        return traj.samples
    return tuple(traj)


def estimate_rate(traj, k_min: int, k_max: int) -> RateFit:
    """OLS fit of log(err_l1) on log(k) over samples with k in [k_min, k_max].

    Samples with exactly zero error cannot enter the log fit; they are
    excluded and counted.  Needs at least 5 usable points.
    """
    if k_min < 1:
        raise ValueError(f"k_min must be at least 1, got {k_min}")
    if k_max < k_min:
        raise ValueError(f"k_max={k_max} below k_min={k_min}")
    ks = []
    errs = []
    zeros = 0
    for s in _samples(traj):
        if not k_min <= s.k <= k_max:
            continue
        if s.err_l1 == 0.0:
            zeros += 1
            continue
        ks.append(s.k)
        errs.append(s.err_l1)
    if len(ks) < MIN_POINTS:
        raise InsufficientSamples(
            f"need at least {MIN_POINTS} samples with positive error in "
            f"[{k_min}, {k_max}], got {len(ks)} ({zeros} zero-error excluded)"
        )
    x = np.log(np.array(ks, dtype=np.float64))
    y = np.log(np.array(errs, dtype=np.float64))
    xm = x.mean()
    ym = y.mean()
    sxx = float(((x - xm) ** 2).sum())
    sxy = float(((x - xm) * (y - ym)).sum())
    slope = sxy / sxx
    intercept = ym - slope * xm
    resid = y - (slope * x + intercept)
    ss_res = float((resid**2).sum())
    ss_tot = float(((y - ym) ** 2).sum())
    if ss_tot > 0.0:
        r_squared = 1.0 - ss_res / ss_tot
    else:
        r_squared = 1.0 if ss_res <= 1e-24 else 0.0
    return RateFit(
        slope=slope,
        intercept=intercept,
        r_squared=r_squared,
        k_min=k_min,
        k_max=k_max,
        n_points=len(ks),
        zeros_excluded=zeros,
    )
