"""Ground-truth evaluation: direct quadrature of the defining operators,
a closed-form catalog at alpha = 1/2, and the L2 dist metric.

These are the yardsticks the series expansion is measured against and
deliberately share no code with it beyond the scalar special functions.

Left integral / derivative (0 < a < t, kernels after xi = ln(t/tau)):

    I x(t) = (1/Gamma(a)) int_0^L xi^(alpha-1) x(a e^(L-xi)) dxi
    D x(t) = [x(a) L^(-alpha)
              + int_0^L xi^(-alpha) xdot(tau) tau dxi] / Gamma(1-alpha)

with L = ln(t/a) and tau = a e^(L-xi); the extra tau in the derivative
integrand is the Jacobian d tau = tau d xi.  Right variants mirror with
L = ln(b/t), tau = b e^(xi-L), and a minus sign on the derivative's
integral part.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import erf as _vec_erf

from .errors import DomainError, GridError, ParameterError
from .functions import FunctionSpec
from .quadrature import DEFAULT_QUADRATURE, QuadratureConfig, kernel_quad
from .special_functions import gamma

__all__ = [
    "CLOSED_FORM_IDS",
    "FunctionSpec",
    "QuadratureConfig",
    "closed_form",
    "closed_form_id",
    "dist_metric",
    "hadamard_derivative_quad",
    "hadamard_integral_quad",
]

_SQRT_PI = math.sqrt(math.pi)


def _check_geometry(side: str, a: float, t: np.ndarray, b) -> float:
    """Validate interval data; returns the anchor (a for left, b for right)."""
    if side not in ("left", "right"):
        raise ParameterError(f"side must be 'left' or 'right', got {side!r}")
    if not a > 0:
        raise DomainError("lower endpoint a must be positive")
    if side == "left":
        if np.any(t < a):
            raise DomainError("left operator needs t >= a")
        return float(a)
    if b is None:
        raise ParameterError("right-sided evaluation needs the upper endpoint b")
    b = float(b)
    if not b > a:
        raise DomainError("upper endpoint b must exceed a")
    if np.any(t > b) or np.any(t <= 0):
        raise DomainError("right operator needs 0 < t <= b")
    return b


def hadamard_integral_quad(
    x: FunctionSpec,
    alpha: float,
    a: float,
    t,
    side: str = "left",
    b: float | None = None,
    config: QuadratureConfig = DEFAULT_QUADRATURE,
):
    """Fractional integral of order alpha > 0 by direct panel quadrature."""
    alpha = float(alpha)
    if not (math.isfinite(alpha) and alpha > 0):
        raise ParameterError("alpha must be positive for the integral kind")
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    anchor = _check_geometry(side, float(a), tt, b)
    if side == "left":
        length = np.log(tt / anchor)

        def integrand(xi, rem):
            return x.eval(anchor * np.exp(rem))

    else:
        length = np.log(anchor / tt)

        def integrand(xi, rem):
            return x.eval(anchor * np.exp(-rem))

    out = kernel_quad(integrand, length, alpha, config) / gamma(alpha)
    return float(out[0]) if np.ndim(t) == 0 else out


def hadamard_derivative_quad(
    x: FunctionSpec,
    alpha: float,
    a: float,
    t,
    side: str = "left",
    b: float | None = None,
    config: QuadratureConfig = DEFAULT_QUADRATURE,
):
    """Fractional derivative of order alpha in (0,1), boundary-term form.

    Needs x to supply a first derivative (analytic or finite-difference).
    The evaluation point must be strictly off the anchor, where the
    boundary term diverges.
    """
    alpha = float(alpha)
    if not (math.isfinite(alpha) and 0.0 < alpha < 1.0):
        raise ParameterError("alpha must lie in (0, 1) for the derivative kind")
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    anchor = _check_geometry(side, float(a), tt, b)
    if side == "left":
        if np.any(tt <= anchor):
            raise DomainError("left derivative needs t > a")
        length = np.log(tt / anchor)

        def integrand(xi, rem):
            tau = anchor * np.exp(rem)
            return x.deriv(1, tau) * tau

        sign = 1.0
    else:
        if np.any(tt >= anchor):
            raise DomainError("right derivative needs t < b")
        length = np.log(anchor / tt)

        def integrand(xi, rem):
            tau = anchor * np.exp(-rem)
            return x.deriv(1, tau) * tau

        sign = -1.0
    boundary = float(x.eval(np.array([anchor]))[0])
    integral = kernel_quad(integrand, length, 1.0 - alpha, config)
    out = (boundary * length ** (-alpha) + sign * integral) / gamma(1.0 - alpha)
    return float(out[0]) if np.ndim(t) == 0 else out


# Closed forms below hold for anchor a = 1, alpha = 1/2, left side.  They
# follow from int_0^L xi^(-1/2) e^(c(L-xi)) dxi = sqrt(pi/c) e^(cL) erf(sqrt(cL))
# together with Gamma(1/2) = sqrt(pi); the erf prefactors are therefore the
# exact values sqrt(pi)/2 and sqrt(pi)/3, not truncated decimals.
def _closed_forms():
    g15 = gamma(1.5)
    g25 = gamma(2.5)
    g05 = gamma(0.5)

    def d_one(w, t):
        return 1.0 / (g05 * np.sqrt(w))

    return {
        "I_one": lambda w, t: np.sqrt(w) / g15,
        "I_ln": lambda w, t: np.sqrt(w ** 3) / g25,
        "I_t4": lambda w, t: (_SQRT_PI / 2) / g05 * t ** 4 * _vec_erf(2 * np.sqrt(w)),
        "I_t9": lambda w, t: (_SQRT_PI / 3) / g05 * t ** 9 * _vec_erf(3 * np.sqrt(w)),
        "D_one": d_one,
        "D_ln": lambda w, t: np.sqrt(w) / g15,
        "D_t4": lambda w, t: d_one(w, t)
        + (_SQRT_PI / 2) / g05 * 4 * t ** 4 * _vec_erf(2 * np.sqrt(w)),
        "D_t9": lambda w, t: d_one(w, t)
        + (_SQRT_PI / 3) / g05 * 9 * t ** 9 * _vec_erf(3 * np.sqrt(w)),
    }


CLOSED_FORM_IDS = tuple(sorted(_closed_forms()))

_FORM_STEM = {"one": "one", "ln": "ln", "pow4": "t4", "pow9": "t9"}


def closed_form_id(kind: str, fn_id: str) -> str | None:
    """Catalog closed-form id for (kind, builtin fn), or None if absent."""
    stem = _FORM_STEM.get(fn_id)
    if stem is None:
        return None
    return ("I_" if kind == "integral" else "D_") + stem


def closed_form(form_id: str, t):
    """Evaluate a catalog closed form; defined for t > 1 only."""
    forms = _closed_forms()
    if form_id not in forms:
        raise ParameterError(f"unknown closed form id: {form_id!r}")
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(tt <= 1.0):
        raise DomainError("closed forms are defined for t > 1")
    w = np.log(tt)
    out = np.asarray(forms[form_id](w, tt), dtype=float)
    return float(out[0]) if np.ndim(t) == 0 else out


def dist_metric(f_values, g_values, grid) -> float:
    """L2 distance sqrt(int (f-g)^2 dt), composite trapezoid on the grid."""
    f = np.asarray(f_values, dtype=float)
    g = np.asarray(g_values, dtype=float)
    x = np.asarray(grid, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise GridError("dist metric needs a one-dimensional grid of >= 2 points")
    if f.shape != x.shape or g.shape != x.shape:
        raise GridError("value columns must match the grid shape")
    if np.any(np.diff(x) <= 0):
        raise GridError("grid must be strictly increasing")
    return float(math.sqrt(np.trapezoid((f - g) ** 2, x)))
