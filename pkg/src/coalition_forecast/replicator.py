"""Replicator dynamics over the m size-grouped coalition choices.

Two notions of the population average are supported. In the constant-
average mode the benchmark is the structure-uniform average worth, a
frequency-independent constant, so the simplex is not invariant and the
raw frequencies are reported with their drift. In the frequency-weighted
mode the benchmark is the usual mean payoff at the current frequencies
and the state is renormalized to the simplex after every step.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .combinatorics import BellTable, binomial
from .predictor import average_worth
from .worth import SymmetricWorth, per_capita_vector


class Mode(enum.Enum):
    PAPER_CONSTANT_AVERAGE = "paper_constant_average"
    FREQUENCY_WEIGHTED = "frequency_weighted"


DEFAULT_STEP_SIZE = 0.01
CLAMP_ABORT_FRACTION = 0.01


class IntegrationError(RuntimeError):
    """Integration aborted: non-finite state or excessive clamping."""


@dataclass(frozen=True)
class ReplicatorState:
    """Frequencies of the m size choices at one instant."""

    time: float
    frequencies: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.time < 0:
            raise ValueError("time must be non-negative")
        if not self.frequencies:
            raise ValueError("frequencies must be non-empty")
        if any(x < 0 for x in self.frequencies):
            raise ValueError("frequencies must be non-negative")

    @property
    def m(self) -> int:
        return len(self.frequencies)


@dataclass(frozen=True)
class DynamicsConfig:
    mode: Mode = Mode.PAPER_CONSTANT_AVERAGE
    step_size: float = DEFAULT_STEP_SIZE
    horizon: float = 10.0
    record_every: int = 1

    def __post_init__(self) -> None:
        if self.step_size <= 0:
            raise ValueError("step_size must be positive")
        if self.horizon <= self.step_size:
            raise ValueError("horizon must exceed step_size")
        if self.record_every < 1:
            raise ValueError("record_every must be at least 1")


@dataclass(frozen=True)
class Trajectory:
    config: DynamicsConfig
    states: tuple[ReplicatorState, ...]
    terminal_residuals: tuple[float, ...]
    clamp_events: int
    max_simplex_drift: float

    def __post_init__(self) -> None:
        if not self.states:
            raise ValueError("trajectory must contain at least one state")
        times = [state.time for state in self.states]
        if any(later <= earlier for earlier, later in zip(times, times[1:])):
            raise ValueError("recorded times must be strictly increasing")

    @property
    def terminal(self) -> ReplicatorState:
        return self.states[-1]


def initial_frequencies(m: int, bell: BellTable) -> ReplicatorState:
    """Uniform distribution over raw structures, pushed forward to sizes.

    A fixed agent lands in a size-k coalition in C(m-1,k-1)*B_{m-k} of the
    B_m structures, so x_k(0) is that count over B_m. The counts sum to
    B_m exactly, which is the Bell recurrence.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if bell.max_index < m:
        raise ValueError(f"Bell table covers indices up to {bell.max_index}, need {m}")
    total = bell[m]
    freqs = tuple(binomial(m - 1, k - 1) * bell[m - k] / total for k in range(1, m + 1))
    return ReplicatorState(time=0.0, frequencies=freqs)


def uniform_frequencies(m: int) -> ReplicatorState:
    """Uniform over the m size groups (alternative initial condition)."""
    if m < 1:
        raise ValueError("m must be positive")
    return ReplicatorState(time=0.0, frequencies=(1.0 / m,) * m)


def _as_floats(values: np.ndarray) -> tuple[float, ...]:
    return tuple(float(v) for v in values)


def _payoff_deviation(x: np.ndarray, payoffs: np.ndarray, mode: Mode,
                      constant_average: float) -> np.ndarray:
    if mode is Mode.PAPER_CONSTANT_AVERAGE:
        return payoffs - constant_average
    return payoffs - float(np.dot(x, payoffs))


def vector_field(state: ReplicatorState, worth: SymmetricWorth, mode: Mode,
                 bell: BellTable) -> tuple[float, ...]:
    """Growth rate dx_k/dt = x_k * (per-capita payoff - average)."""
    if state.m != worth.m:
        raise ValueError(f"state has m={state.m} but worth has m={worth.m}")
    x = np.asarray(state.frequencies, dtype=float)
    payoffs = np.asarray(per_capita_vector(worth), dtype=float)
    avg = average_worth(worth, bell) if mode is Mode.PAPER_CONSTANT_AVERAGE else 0.0
    return tuple(float(g) for g in x * _payoff_deviation(x, payoffs, mode, avg))


def integrate(start: ReplicatorState, worth: SymmetricWorth,
              config: DynamicsConfig, bell: BellTable) -> Trajectory:
    """Fixed-step 4th-order integration from t=0 to the horizon.

    Negative frequencies produced by discretization are clamped to zero
    and counted; clamping on more than 1% of steps aborts (step size too
    large), as does any non-finite state. In frequency-weighted mode the
    state is renormalized to the simplex after each step and the largest
    pre-normalization drift is reported.
    """
    if start.m != worth.m:
        raise ValueError(f"start has m={start.m} but worth has m={worth.m}")
    payoffs = np.asarray(per_capita_vector(worth), dtype=float)
    weighted = config.mode is Mode.FREQUENCY_WEIGHTED
    avg = 0.0 if weighted else average_worth(worth, bell)

    def field(x: np.ndarray) -> np.ndarray:
        return x * _payoff_deviation(x, payoffs, config.mode, avg)

    h = config.step_size
    n_steps = max(1, int(round(config.horizon / h)))
    clamp_budget = CLAMP_ABORT_FRACTION * n_steps

    x = np.asarray(start.frequencies, dtype=float)
    states = [ReplicatorState(time=0.0, frequencies=_as_floats(x))]
    clamp_events = 0
    max_drift = abs(float(x.sum()) - 1.0) if weighted else 0.0

    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(1, n_steps + 1):
            k1 = field(x)
            k2 = field(x + 0.5 * h * k1)
            k3 = field(x + 0.5 * h * k2)
            k4 = field(x + h * k3)
            x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            t = step * h

            if not np.all(np.isfinite(x)):
                raise IntegrationError(
                    f"non-finite frequencies at t={t:g} (step {step}): {x.tolist()}"
                )
            if np.any(x < 0.0):
                clamp_events += 1
                x = np.maximum(x, 0.0)
                if clamp_events > clamp_budget:
                    raise IntegrationError(
                        f"clamped negative frequencies on {clamp_events} of {step} "
                        f"steps (>{CLAMP_ABORT_FRACTION:.0%}): step size {h:g} too large"
                    )
            if weighted:
                total = float(x.sum())
                max_drift = max(max_drift, abs(total - 1.0))
                if total <= 0.0:
                    raise IntegrationError(
                        f"population vanished at t={t:g}: frequency sum {total:g}"
                    )
                x = x / total
            else:
                max_drift = max(max_drift, abs(float(x.sum()) - 1.0))

            if step % config.record_every == 0 or step == n_steps:
                states.append(ReplicatorState(time=t, frequencies=_as_floats(x)))

    deviation = _payoff_deviation(x, payoffs, config.mode, avg)
    return Trajectory(
        config=config,
        states=tuple(states),
        terminal_residuals=_as_floats(deviation),
        clamp_events=clamp_events,
        max_simplex_drift=max_drift,
    )


@dataclass(frozen=True)
class RestPointReport:
    is_rest_point: bool
    statuses: tuple[str, ...]  # per strategy: extinct | equilibrated | active
    growth_rates: tuple[float, ...]
    payoff_deviations: tuple[float, ...]


def rest_point_check(state: ReplicatorState, worth: SymmetricWorth, mode: Mode,
                     bell: BellTable, tolerance: float) -> RestPointReport:
    """Is the state a rest point: every strategy extinct or at the average?"""
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    if state.m != worth.m:
        raise ValueError(f"state has m={state.m} but worth has m={worth.m}")
    x = np.asarray(state.frequencies, dtype=float)
    payoffs = np.asarray(per_capita_vector(worth), dtype=float)
    avg = average_worth(worth, bell) if mode is Mode.PAPER_CONSTANT_AVERAGE else 0.0
    deviation = _payoff_deviation(x, payoffs, mode, avg)
    growth = x * deviation

    statuses = []
    for xk, dev in zip(x, deviation):
        if xk == 0.0:
            statuses.append("extinct")
        elif abs(dev) <= tolerance:
            statuses.append("equilibrated")
        else:
            statuses.append("active")
    return RestPointReport(
        is_rest_point=bool(np.all(np.abs(growth) <= tolerance)),
        statuses=tuple(statuses),
        growth_rates=tuple(float(g) for g in growth),
        payoff_deviations=tuple(float(d) for d in deviation),
    )
