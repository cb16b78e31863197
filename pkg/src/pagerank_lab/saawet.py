"""Stochastic approximation with expanding truncations.

The engine iterates z <- z + gamma * y while the candidate stays
inside the current bound; whenever it escapes, the iterate resets to a
fixed interior point and the bound expands to the next term of an
increasing divergent sequence.  Root finding against noisy
observations y = g(z) + noise converges under the usual gain
conditions (positive gains, vanishing, divergent sum); those
conditions are documented contracts on the supplied rules, validated
for the built-in ones in the test suite.

The averaging recursion of the one-page protocol is exactly this
engine driven by the observation x_k - z with gain 1/(k+1); since the
iterates live on the probability simplex, any bound of 2 or more is
never hit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Protocol

import numpy as np

from .centralized import uniform_vector
from .errors import DimensionMismatch
from .graph import WebGraph, build_link_matrix
from .matrix import ColumnStochasticMatrix
from .rng import philox_stream
from .schedules import resolve_schedule


def harmonic_gains(power: float = 1.0, offset: int = 1) -> Callable[[int], float]:
    """Gain rule 1 / (k + offset)**power for step index k >= 0.

    For power in (0, 1] the gains are positive, decrease to zero, and
    their partial sums diverge.
    """
    if not 0.0 < power <= 1.0:
        raise ValueError(f"power must lie in (0, 1], got {power}")
    if offset < 1:
        raise ValueError(f"offset must be at least 1, got {offset}")

    def gains(k: int) -> float:
        return 1.0 / (k + offset) ** power

    return gains


def geometric_bounds(m0: float = 10.0, factor: float = 2.0) -> Callable[[int], float]:
    """Truncation bounds m0 * factor**sigma: increasing and unbounded."""
    if m0 <= 0.0 or factor <= 1.0:
        raise ValueError(f"need m0 > 0 and factor > 1, got m0={m0}, factor={factor}")

    def bounds(sigma: int) -> float:
        return m0 * factor**sigma

    return bounds


@dataclass
class SaawetState:
    """Iterate, truncation count, and step index."""

    z: np.ndarray
    sigma: int
    k: int


@dataclass
class SaawetConfig:
    """Engine configuration.

    gains(k) must be positive; bounds(sigma) must be strictly
    increasing and unbounded; the reset point must satisfy
    ||reset_point|| < bounds(0).
    """

    gains: Callable[[int], float]
    bounds: Callable[[int], float]
    reset_point: np.ndarray
    initial: np.ndarray

    def validate(self) -> None:
        b0, b1 = self.bounds(0), self.bounds(1)
        if not b0 < b1:
            raise ValueError(f"bounds must increase: bounds(0)={b0}, bounds(1)={b1}")
        if float(np.linalg.norm(self.reset_point)) >= b0:
            raise ValueError("reset point must lie strictly inside the first bound")
        if self.reset_point.shape != self.initial.shape:
            raise DimensionMismatch("reset point and initial iterate differ in shape")


def saawet_step(
    state: SaawetState, y: np.ndarray, gamma: float, config: SaawetConfig
) -> SaawetState:
    """One engine step with observation y and gain gamma.

    The candidate z + gamma*y is kept when its Euclidean norm is <=
    the current bound (boundary included); otherwise the iterate
    resets and the truncation count increments.
    """
    if gamma <= 0.0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    y = np.asarray(y, dtype=np.float64)
    if y.shape != state.z.shape:
        raise DimensionMismatch(f"observation shape {y.shape} != iterate shape {state.z.shape}")
    candidate = state.z + gamma * y
    if float(np.linalg.norm(candidate)) <= config.bounds(state.sigma):
        return SaawetState(z=candidate, sigma=state.sigma, k=state.k + 1)
    return SaawetState(z=config.reset_point.copy(), sigma=state.sigma + 1, k=state.k + 1)


class ObservationSource(Protocol):
    """Yields y = g(z) + noise for the current iterate."""

    def observe(self, k: int, z: np.ndarray) -> np.ndarray: ...


@dataclass
class LinearRootProblem:
    """Toy source g(z) = -(z - target) plus bounded uniform noise."""

    target: np.ndarray
    noise_scale: float
    rng: np.random.Generator

    @staticmethod
    def from_seed(target, noise_scale: float, seed: int, stream: int = 0) -> "LinearRootProblem":
        return LinearRootProblem(
            target=np.asarray(target, dtype=np.float64),
            noise_scale=float(noise_scale),
            rng=philox_stream(seed, stream),
        )

    def observe(self, k: int, z: np.ndarray) -> np.ndarray:
        noise = self.rng.uniform(-1.0, 1.0, size=z.shape)
        return (self.target - z) + self.noise_scale * noise


@dataclass
class DrpaAveragingSource:
    """Observation source that carries the one-page protocol iterate.

    observe returns x_k - z (so the engine reproduces the running
    average recursion), then advances x_k one protocol step using the
    same draw sequence as the direct runner.
    """

    A: ColumnStochasticMatrix
    a1: float
    x: np.ndarray
    rng: np.random.Generator

    @staticmethod
    def from_graph(g: WebGraph, alpha: float, seed: int, stream: int = 0) -> "DrpaAveragingSource":
        from .drpa_single import alpha1

        A = build_link_matrix(g)
        return DrpaAveragingSource(
            A=A,
            a1=alpha1(alpha, g.n),
            x=uniform_vector(g.n),
            rng=philox_stream(seed, stream),
        )

    def observe(self, k: int, z: np.ndarray) -> np.ndarray:
        from .drpa_single import apply_distributed_link

        y = self.x - z
        theta = int(self.rng.integers(0, self.A.n))
        applied = apply_distributed_link(self.A, theta, self.x)
        self.x = (1.0 - self.a1) * applied + self.a1 / self.A.n
        return y


@dataclass
class SaawetTrace:
    """Sampled engine trajectory: (k, z, sigma) per scheduled step."""

    points: list[tuple[int, np.ndarray, int]] = field(default_factory=list)
    final: SaawetState | None = None

    @property
    def truncations(self) -> int:
        return self.final.sigma if self.final is not None else 0


def run_saawet(
    problem: ObservationSource,
    config: SaawetConfig,
    steps: int,
    schedule="geometric",
) -> SaawetTrace:
    """Drive the engine for `steps` steps, sampling on the schedule.

    Step t >= 0 uses gain config.gains(t); deterministic given the
    problem's seeded noise.
    """
    if steps < 1:
        raise ValueError(f"steps must be at least 1, got {steps}")
    config.validate()
    sched = resolve_schedule(schedule, steps)
    state = SaawetState(z=np.array(config.initial, dtype=np.float64), sigma=0, k=0)
    trace = SaawetTrace()
    sptr = 0
    for t in range(steps):
        y = problem.observe(state.k, state.z)
        state = saawet_step(state, y, config.gains(t), config)
        if sptr < sched.size and sched[sptr] == state.k:
            trace.points.append((state.k, state.z.copy(), state.sigma))
            sptr += 1
    trace.final = state
    return trace


def drpa_as_saawet(
    g: WebGraph,
    alpha: float,
    steps: int,
    seed: int,
    m0: float = 2.0,
    schedule="geometric",
    stream: int = 0,
) -> SaawetTrace:
    """The one-page averaging recursion run through the generic engine.

    With m0 >= 2 the simplex-bound iterates never truncate and the z
    trajectory matches the direct runner's running average to rounding
    noise.
    """
    source = DrpaAveragingSource.from_graph(g, alpha, seed, stream)
    x0 = uniform_vector(g.n)
    config = SaawetConfig(
        gains=harmonic_gains(1.0, offset=1),
        bounds=geometric_bounds(m0=m0, factor=2.0),
        reset_point=np.zeros(g.n),
        initial=x0,
    )
    return run_saawet(source, config, steps, schedule)
