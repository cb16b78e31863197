"""Sample schedules for long protocol runs."""

from __future__ import annotations

import numpy as np

GEOMETRIC = "geometric"


def geometric_schedule(steps: int) -> np.ndarray:
    """Steps 1, 2, 4, ... up to the horizon, plus the final step.

    Log-spaced samples keep rate fitting well-conditioned without
    recording every iterate.
    """
    if steps < 1:
        raise ValueError(f"steps must be at least 1, got {steps}")
    ks = []
    k = 1
    while k <= steps:
        ks.append(k)
        k *= 2
    if ks[-1] != steps:
        ks.append(steps)
    return np.array(ks, dtype=np.int64)


def resolve_schedule(spec, steps: int) -> np.ndarray:
    """Accepts the schedule name "geometric" or an explicit sequence of
    step counts; returns a sorted int64 array within [1, steps]."""
    if isinstance(spec, str):
        if spec != GEOMETRIC:
            raise ValueError(f"unknown schedule {spec!r}; only {GEOMETRIC!r} is supported")
        return geometric_schedule(steps)
    ks = np.unique(np.asarray(list(spec), dtype=np.int64))
    if ks.size == 0:
        return np.empty(0, dtype=np.int64)
    if ks[0] < 1 or ks[-1] > steps:
        raise ValueError(f"schedule entries must lie in [1, {steps}]")
    return ks
