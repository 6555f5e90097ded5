"""Time stepping for complex canonical flows.

Quadratic Hamiltonians ``H = z^dagger K z`` (``K`` Hermitian) give the linear
flow ``i dz/dt = K z`` and are advanced exactly by ``exp(-i K t)``.  Everything
else goes through the implicit midpoint rule

    s_next = s + dt * f((s + s_next) / 2)

solved by fixed-point iteration.  States are complex arrays of any shape and
are integrated as complex numbers, never split into real pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from ._linalg import hermitian_propagator
from .errors import ConvergenceError, DomainError

VectorField = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class FlowProblem:
    state: np.ndarray
    vector_field: VectorField
    invariants: tuple[tuple[str, Callable[[np.ndarray], float]], ...] = ()

    def with_state(self, state) -> "FlowProblem":
        return replace(self, state=np.asarray(state, dtype=complex))

    def reversed(self) -> "FlowProblem":
        """Same problem with time running backwards."""
        f = self.vector_field
        return replace(self, vector_field=lambda s: -f(s))

    def evaluate_invariants(self, state=None) -> dict[str, float]:
        s = self.state if state is None else state
        return {name: float(fn(s)) for name, fn in self.invariants}


@dataclass(frozen=True)
class StepperConfig:
    dt: float
    tol: float = 1e-13
    max_iter: int = 50

    def __post_init__(self):
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise DomainError(f"dt must be positive and finite, got {self.dt!r}")
        if not self.tol > 0:
            raise DomainError("tolerance must be positive")
        if self.max_iter < 1:
            raise DomainError("max_iter must be at least 1")


def exact_quadratic_step(state, generator, t: float) -> np.ndarray:
    """Advance ``i dz/dt = K z`` exactly; ``generator`` is the Hermitian ``K``.

    ``state`` may carry leading batch axes; the last axis is the mode index.
    """
    state = np.asarray(state, dtype=complex)
    if not (np.all(np.isfinite(state)) and math.isfinite(t)):
        raise DomainError("non-finite state or time")
    generator = np.asarray(generator, dtype=complex)
    if np.count_nonzero(generator - np.diag(np.diagonal(generator))) == 0:
        if not np.all(np.isfinite(generator)) or np.any(np.diagonal(generator).imag != 0):
            raise DomainError("diagonal generator must be real and finite")
        return np.exp(-1j * np.diagonal(generator).real * t) * state
    return state @ hermitian_propagator(generator, t).T


def implicit_midpoint_step(problem: FlowProblem, config: StepperConfig) -> np.ndarray:
    """One implicit-midpoint step from ``problem.state``; returns the new state.

    Fixed-point iteration starts from the explicit Euler predictor and stops
    when successive iterates differ by at most ``tol * max(1, |s|_inf)``.
    """
    s = problem.state
    f = problem.vector_field
    dt = config.dt
    scale = max(1.0, float(np.max(np.abs(s), initial=0.0)))
    threshold = config.tol * scale
    residual = math.inf
    k = 0
    # a diverging iteration may overflow; that is caught below as a non-finite residual
    with np.errstate(over="ignore", invalid="ignore"):
        nxt = s + dt * f(s)
        for k in range(1, config.max_iter + 1):
            new = s + dt * f(0.5 * (s + nxt))
            residual = float(np.max(np.abs(new - nxt), initial=0.0))
            nxt = new
            if residual <= threshold:
                return nxt
            if not math.isfinite(residual):
                break
    raise ConvergenceError(
        f"implicit midpoint did not converge in {k} iterations "
        f"(residual {residual:.3e}, dt {dt:g}); reduce the step size",
        residual=residual,
        iterations=k,
    )


def integrate(problem: FlowProblem, config: StepperConfig, n_steps: int) -> np.ndarray:
    """Trajectory of ``n_steps`` midpoint steps; row 0 is the initial state."""
    out = np.empty((n_steps + 1,) + np.shape(problem.state), dtype=complex)
    out[0] = problem.state
    p = problem
    for k in range(n_steps):
        p = p.with_state(implicit_midpoint_step(p, config))
        out[k + 1] = p.state
    return out


@dataclass
class ConvergenceReport:
    dts: list[float]
    errors: list[float]
    steps: list[int]
    slope: float
    reference: str = "exact"
    rows: list[dict] = field(default_factory=list)

    def __post_init__(self):
        self.rows = [
            {"dt": dt, "error": err, "steps": n}
            for dt, err, n in zip(self.dts, self.errors, self.steps)
        ]


def fit_loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def convergence_report(
    problem: FlowProblem,
    dts: Sequence[float],
    t_end: float,
    exact: Callable[[float], np.ndarray] | None = None,
) -> ConvergenceReport:
    """Global error at ``t_end`` of implicit midpoint for each step size.

    ``exact(t)`` supplies the reference solution; without it a run at
    ``min(dts)/16`` is used.  Step sizes must divide ``t_end`` (to 1e-9).
    """
    dts = [float(d) for d in dts]
    if len(dts) < 3:
        raise DomainError("need at least three step sizes")
    if any(b >= a for a, b in zip(dts, dts[1:])):
        raise DomainError("step sizes must be strictly decreasing")

    def run(dt):
        n = int(round(t_end / dt))
        if abs(n * dt - t_end) > 1e-9 * max(1.0, t_end):
            raise DomainError(f"dt={dt} does not divide t_end={t_end}")
        p = problem
        cfg = StepperConfig(dt)
        for _ in range(n):
            p = p.with_state(implicit_midpoint_step(p, cfg))
        return p.state, n

    if exact is not None:
        ref = np.asarray(exact(t_end), dtype=complex)
        label = "exact"
    else:
        ref, _ = run(dts[-1] / 16.0)
        label = f"midpoint dt={dts[-1] / 16.0:g}"
    errors, steps = [], []
    for dt in dts:
        s, n = run(dt)
        errors.append(float(np.max(np.abs(s - ref))))
        steps.append(n)
    return ConvergenceReport(dts, errors, steps, fit_loglog_slope(dts, errors), label)
