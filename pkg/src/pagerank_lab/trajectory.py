"""Trajectory records and their byte-stable serializations.

A trajectory is the experiment output: run metadata, sampled
(step, error) records against the reference ranking, and the final
averaged estimate.  Serialization is deterministic: floats print in
shortest round-trip form (at most 17 significant digits), so equal
trajectories always produce identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ._version import ARTIFACT_VERSION


@dataclass(frozen=True)
class TrajectorySample:
    k: int
    err_l1: float
    err_l2: float
    sigma: int


@dataclass(frozen=True)
class RunMeta:
    graph_source: str
    alpha: float
    beta: float | None
    seed: int
    steps: int
    protocol: str
    schedule: str
    version: str = ARTIFACT_VERSION


@dataclass(frozen=True)
class Trajectory:
    meta: RunMeta
    samples: tuple[TrajectorySample, ...]
    final_x_bar: tuple[float, ...]

    def validate(self) -> None:
        prev_k = 0
        prev_sigma = -1
        for s in self.samples:
            if s.k <= prev_k:
                raise ValueError(f"sample steps must strictly increase, got k={s.k} after {prev_k}")
            if s.err_l1 < 0.0 or s.err_l2 < 0.0:
                raise ValueError(f"negative error at k={s.k}")
            if s.sigma < max(prev_sigma, 0):
                raise ValueError(f"truncation count decreased at k={s.k}")
            prev_k = s.k
            prev_sigma = s.sigma


def _fmt(v: float) -> str:
    # repr of a Python float is the shortest string that round-trips,
    # never more than 17 significant digits
    return repr(float(v))


def trajectory_to_csv(traj: Trajectory) -> str:
    lines = ["k,err_l1,err_l2,sigma"]
    for s in traj.samples:
        lines.append(f"{s.k},{_fmt(s.err_l1)},{_fmt(s.err_l2)},{s.sigma}")
    return "\n".join(lines) + "\n"


def samples_from_csv(text: str) -> tuple[TrajectorySample, ...]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "k,err_l1,err_l2,sigma":
        raise ValueError("missing trajectory CSV header 'k,err_l1,err_l2,sigma'")
    out = []
    for ln in lines[1:]:
        k, e1, e2, sg = ln.split(",")
        out.append(TrajectorySample(k=int(k), err_l1=float(e1), err_l2=float(e2), sigma=int(sg)))
    return tuple(out)


def trajectory_to_payload(traj: Trajectory) -> dict:
    return {
        "meta": {
            "graph_source": traj.meta.graph_source,
            "alpha": traj.meta.alpha,
            "beta": traj.meta.beta,
            "seed": traj.meta.seed,
            "steps": traj.meta.steps,
            "protocol": traj.meta.protocol,
            "schedule": traj.meta.schedule,
            "version": traj.meta.version,
        },
        "samples": [
            {"k": s.k, "err_l1": s.err_l1, "err_l2": s.err_l2, "sigma": s.sigma}
            for s in traj.samples
        ],
        "final_x_bar": list(traj.final_x_bar),
    }


def trajectory_from_payload(payload: dict) -> Trajectory:
    meta = payload["meta"]
    return Trajectory(
        meta=RunMeta(
            graph_source=meta["graph_source"],
            alpha=float(meta["alpha"]),
            beta=None if meta["beta"] is None else float(meta["beta"]),
            seed=int(meta["seed"]),
            steps=int(meta["steps"]),
            protocol=meta["protocol"],
            schedule=meta["schedule"],
            version=meta["version"],
        ),
        samples=tuple(
            TrajectorySample(
                k=int(s["k"]),
                err_l1=float(s["err_l1"]),
                err_l2=float(s["err_l2"]),
                sigma=int(s["sigma"]),
            )
            for s in payload["samples"]
        ),
        final_x_bar=tuple(float(v) for v in payload["final_x_bar"]),
    )


def trajectory_to_json(traj: Trajectory) -> str:
    return json.dumps(trajectory_to_payload(traj), indent=2) + "\n"


def trajectory_from_json(text: str) -> Trajectory:
    return trajectory_from_payload(json.loads(text))


def write_trajectory(traj: Trajectory, fmt: str, destination) -> None:
    """Write CSV or JSON; identical trajectories yield identical bytes."""
    traj.validate()
    if fmt == "csv":
        text = trajectory_to_csv(traj)
    elif fmt == "json":
        text = trajectory_to_json(traj)
    else:
        raise ValueError(f"unknown trajectory format {fmt!r}, expected 'csv' or 'json'")
    Path(destination).write_text(text)


def load_samples(path) -> tuple[TrajectorySample, ...]:
    """Samples from a trajectory file, sniffing JSON vs CSV."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return trajectory_from_json(text).samples
    return samples_from_csv(text)
