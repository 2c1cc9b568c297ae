"""Function descriptions: how to evaluate x(t) and its integer derivatives.

A FunctionSpec bundles an id, a vectorized evaluator, and a derivative
strategy: analytic closures for the builtin catalog, guarded central
finite differences for sampled data.  On top of plain derivatives sit the
lifted sequences used by the expansion,

    x_{k,0}(t) = (t d/dt)^k x(t)          = sum_j S(k, j) t^j x^(j)(t)
    x_{k,1}(t) = d/dt (t d/dt)^k x(t)     = sum_j S(k+1, j+1) t^j x^(j+1)(t)

with S the Stirling numbers of the second kind; the closed forms follow
from expanding the iterated operator and avoid nested symbolic work.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import (
    DerivativeUnavailableError,
    DomainError,
    GridError,
    ParameterError,
)
from .special_functions import stirling2

__all__ = [
    "FD_BASE_STEP",
    "FD_BOUNDARY_FRACTION",
    "FunctionSpec",
    "builtin",
    "catalog",
    "lifted_derivative",
]

FD_BASE_STEP = 1e-5
# Fraction of the distance to a declared domain edge that a finite-difference
# stencil may use; keeps the relative truncation error of the iterated
# stencils below ~5e-5 even right next to the edge.
FD_BOUNDARY_FRACTION = 0.02

Evaluator = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class FunctionSpec:
    """A named function with evaluator and derivative supplier.

    evaluate: vectorized t -> x(t).
    derivative: vectorized (k, t) -> d^k x/dt^k for 1 <= k <= max_order.
    domain: optional (lo, hi) limiting where the function may be evaluated.
    """

    fn_id: str
    evaluate: Evaluator
    derivative: Callable[[int, np.ndarray], np.ndarray]
    max_order: int = 30
    deriv_mode: str = "analytic"
    domain: tuple[float, float] | None = None

    def eval(self, t) -> np.ndarray:
        return np.asarray(self.evaluate(np.asarray(t, dtype=float)), dtype=float)

    def deriv(self, k: int, t) -> np.ndarray:
        if k < 0:
            raise ParameterError("derivative order must be >= 0")
        tt = np.asarray(t, dtype=float)
        if k == 0:
            return self.eval(tt)
        if k > self.max_order:
            raise DerivativeUnavailableError(
                f"{self.fn_id}: derivative order {k} exceeds available order "
                f"{self.max_order}"
            )
        return np.asarray(self.derivative(k, tt), dtype=float)

    @classmethod
    def analytic(cls, fn_id, evaluate, derivative, *, max_order=30):
        return cls(fn_id, evaluate, derivative, max_order=max_order)

    @classmethod
    def finite_difference(cls, fn_id, evaluate, *, max_order=8, lo=None, hi=None):
        """Wrap a bare evaluator; derivatives come from iterated central stencils."""
        deriv = _fd_derivative_chain(evaluate, lo=lo, hi=hi)
        domain = None
        if lo is not None and hi is not None:
            domain = (float(lo), float(hi))
        return cls(
            fn_id,
            evaluate,
            deriv,
            max_order=max_order,
            deriv_mode="central_fd",
            domain=domain,
        )

    @classmethod
    def from_table(cls, fn_id, t_samples, x_samples, *, max_order=8):
        """Sampled data: cubic-spline reconstruction + finite differences."""
        t_arr = np.asarray(t_samples, dtype=float)
        x_arr = np.asarray(x_samples, dtype=float)
        if t_arr.ndim != 1 or t_arr.shape != x_arr.shape:
            raise GridError("table input needs matching one-dimensional columns")
        if t_arr.size < 4:
            raise GridError("table input needs at least 4 samples")
        if not np.all(np.diff(t_arr) > 0):
            raise GridError("table abscissae must be strictly increasing")
        spline = CubicSpline(t_arr, x_arr)
        lo = float(t_arr[0])
        hi = float(t_arr[-1])
        slack = 1e-12 * max(1.0, abs(lo), abs(hi))

        def evaluate(t):
            if np.any(t < lo - slack) or np.any(t > hi + slack):
                raise DomainError(
                    f"table function {fn_id!r} evaluated outside [{lo}, {hi}]"
                )
            return spline(np.clip(t, lo, hi))

        return cls.finite_difference(
            fn_id, evaluate, max_order=max_order, lo=lo, hi=hi
        )


def _fd_derivative_chain(evaluate, lo=None, hi=None):
    """Central differences; order k >= 2 by iterating the order-1 stencil.

    Step h = FD_BASE_STEP * max(1, |t|), shrunk to FD_BOUNDARY_FRACTION of
    the distance to a declared edge so the stencil never leaves the domain;
    a point sitting on the edge itself (clamped step 0) contributes 0.
    """

    def step(t):
        h = FD_BASE_STEP * np.maximum(1.0, np.abs(t))
        if lo is not None:
            h = np.minimum(h, FD_BOUNDARY_FRACTION * (t - lo))
        if hi is not None:
            h = np.minimum(h, FD_BOUNDARY_FRACTION * (hi - t))
        return h

    def deriv_k(k, t):
        if k == 0:
            return np.asarray(evaluate(t), dtype=float)
        h = step(t)
        ok = h > 0
        # Edge points shift by 0 so the discarded stencil stays evaluable;
        # the placeholder denominator only avoids a 0/0 in the dead branch.
        shift = np.where(ok, h, 0.0)
        hs = np.where(ok, h, 1.0)
        upper = deriv_k(k - 1, t + shift)
        lower = deriv_k(k - 1, t - shift)
        return np.where(ok, (upper - lower) / (2.0 * hs), 0.0)

    return deriv_k


def _pow_spec(fn_id: str, exponent: int) -> FunctionSpec:
    def evaluate(t):
        return t ** float(exponent)

    def derivative(k, t):
        if k > exponent:
            return np.zeros_like(t)
        return float(math.perm(exponent, k)) * t ** float(exponent - k)

    return FunctionSpec(fn_id, evaluate, derivative, max_order=60)


def _ln_derivative(k, t):
    return ((-1.0) ** (k - 1)) * float(math.factorial(k - 1)) * t ** float(-k)


def catalog() -> dict[str, FunctionSpec]:
    """Builtin catalog: ids one, ln, pow4, pow9, all with analytic derivatives."""
    return {
        "one": FunctionSpec(
            "one",
            lambda t: np.ones_like(t),
            lambda k, t: np.zeros_like(t),
            max_order=99,
        ),
        "ln": FunctionSpec("ln", np.log, _ln_derivative, max_order=99),
        "pow4": _pow_spec("pow4", 4),
        "pow9": _pow_spec("pow9", 9),
    }


def builtin(fn_id: str) -> FunctionSpec:
    try:
        return catalog()[fn_id]
    except KeyError:
        raise ParameterError(f"unknown builtin function id: {fn_id!r}") from None


def lifted_derivative(x: FunctionSpec, k: int, variant: int, t) -> np.ndarray:
    """Evaluate x_{k,0} (variant 0) or x_{k,1} (variant 1) at t."""
    if variant not in (0, 1):
        raise ParameterError("variant must be 0 or 1")
    if k < 0:
        raise ParameterError("lift order k must be >= 0")
    tt = np.asarray(t, dtype=float)
    out = np.zeros_like(tt)
    if variant == 0:
        for j in range(0, k + 1):
            s = stirling2(k, j)
            if s:
                out = out + s * tt ** float(j) * x.deriv(j, tt)
    else:
        for j in range(0, k + 1):
            s = stirling2(k + 1, j + 1)
            if s:
                out = out + s * tt ** float(j) * x.deriv(j + 1, tt)
    return out
