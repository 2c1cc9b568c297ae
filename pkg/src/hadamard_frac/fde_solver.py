"""Fractional initial value problems via operator replacement.

For one initial condition the derivative expansion at depth n = 1 turns

    D^alpha x(t) + c x(t) = g(t, x(t)),   x(a) = x_0,

into a first-order system in (x, V_2..V_N).  Solving the expansion
identity for the first-derivative term (it is linear in xdot) gives

    xdot = [g(t,x) - c x - a_0 L^(-alpha) x
            - sum_p b_p L^(1-alpha-p) V_p] / (a_1 L^(1-alpha) t)
    Vdot_p = (p - 1) L^(p-2) x / t,          L = ln(t/a),

which is singular at t = a; integration therefore starts at
t0 = a (1 + offset) with x(t0) = x_0 and all V_p(t0) = 0, using classical
fixed-step RK4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .coefficients import a_coeff, b_coeff, check_alpha
from .errors import DomainError, NonFiniteStateError, ParameterError
from .special_functions import gamma

__all__ = [
    "AugmentedState",
    "FdeProblem",
    "FdeSolution",
    "demo_rhs",
    "integrate",
    "replace_operator",
    "solve_fde",
]


def demo_rhs(t: float, x: float) -> float:
    """Driving term whose FDE (alpha = 1/2, c = 1, x(1) = 0) is solved by ln t.

    The square root is clamped at zero: the true trajectory is nonnegative
    but the first RK4 stages near the offset start can dip below by rounding.
    """
    return math.sqrt(max(x, 0.0)) / gamma(1.5) + math.log(t)


@dataclass(frozen=True)
class FdeProblem:
    alpha: float = 0.5
    a: float = 1.0
    t_end: float = 3.0
    c: float = 1.0
    rhs: Callable[[float, float], float] = demo_rhs
    initial_value: float = 0.0
    trunc: int = 2

    def __post_init__(self):
        check_alpha("derivative", self.alpha)
        if not self.a > 0:
            raise DomainError("anchor a must be positive")
        if not self.t_end > self.a:
            raise ParameterError("t_end must exceed the anchor a")
        if self.trunc < 2:
            raise ParameterError("N must be at least n+1")
        if not (math.isfinite(self.c) and math.isfinite(self.initial_value)):
            raise ParameterError("c and initial_value must be finite")


@dataclass
class AugmentedState:
    """State of the replaced system: time, x, and the moment block V_2..V_N."""

    t: float
    x: float
    v: np.ndarray

    def pack(self) -> np.ndarray:
        return np.concatenate(([self.x], np.asarray(self.v, dtype=float)))


def replace_operator(problem: FdeProblem) -> Callable[[float, np.ndarray], np.ndarray]:
    """Right-hand side of the augmented ODE system, y = [x, V_2..V_N]."""
    alpha = problem.alpha
    a = problem.a
    c = problem.c
    n_trunc = problem.trunc
    a0 = a_coeff("derivative", "left", alpha, 0, 1, n_trunc)
    a1 = a_coeff("derivative", "left", alpha, 1, 1, n_trunc)
    b_vals = np.array([b_coeff("derivative", alpha, p, 1) for p in range(2, n_trunc + 1)])
    ps = np.arange(2, n_trunc + 1)

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        if t <= a:
            raise DomainError("replaced system is singular at t <= a")
        x = y[0]
        v = y[1:]
        length = math.log(t / a)
        drive = problem.rhs(t, x)
        num = (
            drive
            - c * x
            - a0 * length ** (-alpha) * x
            - float((b_vals * length ** (1 - alpha - ps) * v).sum())
        )
        xdot = num / (a1 * length ** (1 - alpha) * t)
        vdot = (ps - 1) * length ** (ps - 2.0) * x / t
        return np.concatenate(([xdot], vdot))

    return rhs


def integrate(system, start: AugmentedState, t_end: float, steps: int):
    """Classical fixed-step RK4 from start.t to t_end.

    Returns (ts, ys) with ys[k] the packed state at ts[k].  Raises
    NonFiniteStateError as soon as any component leaves the finite range.
    """
    if steps < 1:
        raise ParameterError("steps must be >= 1")
    t0 = float(start.t)
    if not t_end > t0:
        raise ParameterError("t_end must exceed the start point")
    y = start.pack()
    h = (t_end - t0) / steps
    ts = np.empty(steps + 1)
    ys = np.empty((steps + 1, y.size))
    ts[0] = t0
    ys[0] = y
    t = t0
    # Overflow is how divergence shows up here; the finite check below
    # turns it into an error, so the warning would only be noise.
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(steps):
            k1 = system(t, y)
            k2 = system(t + h / 2, y + h / 2 * k1)
            k3 = system(t + h / 2, y + h / 2 * k2)
            k4 = system(t + h, y + h * k3)
            y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            t = t0 + (k + 1) * h
            if not np.all(np.isfinite(y)):
                raise NonFiniteStateError(
                    f"state left the finite range at t={t}")
            ts[k + 1] = t
            ys[k + 1] = y
    return ts, ys


@dataclass(frozen=True)
class FdeSolution:
    t: np.ndarray
    x: np.ndarray
    moments: np.ndarray  # shape (len(t), N-1), columns p = 2..N


def solve_fde(
    problem: FdeProblem, steps: int = 10_000, start_offset: float = 1e-4
) -> FdeSolution:
    """Integrate the replaced system from t0 = a (1 + start_offset)."""
    if not start_offset > 0:
        raise ParameterError("start_offset must be positive")
    t0 = problem.a * (1.0 + start_offset)
    if not problem.t_end > t0:
        raise ParameterError("t_end must exceed the start point")
    start = AugmentedState(t0, problem.initial_value, np.zeros(problem.trunc - 1))
    system = replace_operator(problem)
    ts, ys = integrate(system, start, problem.t_end, steps)
    return FdeSolution(ts, ys[:, 0].copy(), ys[:, 1:].copy())
