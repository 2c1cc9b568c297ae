"""Expansion coefficients and the computable truncation bound.

For the integral kind of order alpha > 0 at depth n and truncation N:

    a_coeff(i) = [1 + sum_{p=n-i+1}^{N} Gamma(p-alpha-n) /
                      (Gamma(-alpha-i) (p-n+i)!)] / Gamma(alpha+i+1)
    b_coeff(p) = Gamma(p-alpha-n) / (Gamma(alpha) Gamma(1-alpha) (p-n)!)

The derivative kind (0 < alpha < 1) swaps the signs of alpha in the Gamma
arguments: Gamma(p+alpha-n), Gamma(alpha-i), Gamma(i+1-alpha) and
Gamma(-alpha) Gamma(1+alpha).  Right-sided operators flip the sign of
a_coeff for odd i; b_coeff is side-independent.

Every Gamma ratio is evaluated in signed-log space (numerator and
denominator separately overflow for N around 170) and the correction terms
are accumulated smallest-first under Kahan compensation, since they
alternate in sign and decay like p^(-alpha-i-1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError
from .functions import FunctionSpec, lifted_derivative
from .special_functions import gamma, signed_log_gamma

__all__ = [
    "KINDS",
    "SIDES",
    "CoefficientSet",
    "a_coeff",
    "b_coeff",
    "check_alpha",
    "check_kind_side",
    "check_orders",
    "coefficient_set",
    "max_lifted_derivative",
    "truncation_bound",
]

KINDS = ("integral", "derivative")
SIDES = ("left", "right")


def check_kind_side(kind: str, side: str) -> None:
    if kind not in KINDS:
        raise ParameterError(f"kind must be one of {KINDS}, got {kind!r}")
    if side not in SIDES:
        raise ParameterError(f"side must be one of {SIDES}, got {side!r}")


def check_alpha(kind: str, alpha: float) -> None:
    """Admissible orders: integrals need alpha > 0, derivatives alpha in (0,1)."""
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise ParameterError("alpha must be finite")
    if abs(alpha - round(alpha)) < 1e-12:
        raise ParameterError("alpha must be non-integer")
    if kind == "integral":
        if alpha <= 0:
            raise ParameterError("alpha must be positive for the integral kind")
    elif not 0.0 < alpha < 1.0:
        raise ParameterError("alpha must lie in (0, 1) for the derivative kind")


def check_orders(kind: str, depth: int, trunc: int) -> None:
    """Depth n >= 0 for integrals, >= 1 for derivatives; always N >= n+1."""
    min_depth = 0 if kind == "integral" else 1
    if depth < min_depth:
        raise ParameterError(f"n must be at least {min_depth} for the {kind} kind")
    if trunc < depth + 1:
        raise ParameterError("N must be at least n+1")


def _kahan_sum_reversed(terms: list[float]) -> float:
    # Terms arrive in increasing p; sum the small tail first.
    total = 0.0
    comp = 0.0
    for v in reversed(terms):
        y = v - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def _correction_term(kind: str, alpha: float, i: int, depth: int, p: int) -> float:
    if kind == "integral":
        top = p - alpha - depth
        ref = -alpha - i
    else:
        top = p + alpha - depth
        ref = alpha - i
    lt, st = signed_log_gamma(top)
    lr, sr = signed_log_gamma(ref)
    return st * sr * math.exp(lt - lr - math.lgamma(p - depth + i + 1))


def a_coeff(kind: str, side: str, alpha: float, i: int, depth: int, trunc: int) -> float:
    """Coefficient of the lifted-derivative term x_{i,0} in the expansion."""
    check_kind_side(kind, side)
    check_alpha(kind, alpha)
    check_orders(kind, depth, trunc)
    if not 0 <= i <= depth:
        raise ParameterError("term index i must satisfy 0 <= i <= n")
    terms = [
        _correction_term(kind, alpha, i, depth, p)
        for p in range(depth - i + 1, trunc + 1)
    ]
    bracket = 1.0 + _kahan_sum_reversed(terms)
    denom = gamma(alpha + i + 1) if kind == "integral" else gamma(i + 1 - alpha)
    value = bracket / denom
    if side == "right" and i % 2 == 1:
        value = -value
    return value


def b_coeff(kind: str, alpha: float, p: int, depth: int) -> float:
    """Coefficient of the moment term V_p (identical for both sides)."""
    if kind not in KINDS:
        raise ParameterError(f"kind must be one of {KINDS}, got {kind!r}")
    check_alpha(kind, alpha)
    if depth < (0 if kind == "integral" else 1):
        raise ParameterError("n out of range for this kind")
    if p < depth + 1:
        raise ParameterError("moment index p must be at least n+1")
    if kind == "integral":
        lt, st = signed_log_gamma(p - alpha - depth)
        l1, s1 = signed_log_gamma(alpha)
        l2, s2 = signed_log_gamma(1.0 - alpha)
    else:
        lt, st = signed_log_gamma(p + alpha - depth)
        l1, s1 = signed_log_gamma(-alpha)
        l2, s2 = signed_log_gamma(1.0 + alpha)
    return st * s1 * s2 * math.exp(lt - l1 - l2 - math.lgamma(p - depth + 1))


@dataclass(frozen=True)
class CoefficientSet:
    """All coefficients of one operator configuration, precomputed.

    a_coeffs is indexed i = 0..n; b_coeffs is indexed p = n+1..N in order.
    """

    kind: str
    side: str
    alpha: float
    depth: int
    trunc: int
    a_coeffs: tuple[float, ...]
    b_coeffs: tuple[float, ...]


def coefficient_set(kind, side, alpha, depth, trunc) -> CoefficientSet:
    a = tuple(a_coeff(kind, side, alpha, i, depth, trunc) for i in range(depth + 1))
    b = tuple(b_coeff(kind, alpha, p, depth) for p in range(depth + 1, trunc + 1))
    return CoefficientSet(kind, side, float(alpha), depth, trunc, a, b)


def truncation_bound(kind, side, alpha, depth, trunc, t, interval, l_bound) -> float:
    """Upper bound on the truncation error after cutting the moment sum at N.

    With g = alpha + n (integral) or n - alpha (derivative):

        bound = L_n exp(g^2 + g) / (Gamma(g+1) g N^g) * ln(t/a)^g * (t - a)

    on the left (right mirrors with ln(b/t) and (b - t)).  The bound
    vanishes at t equal to the anchor and is strictly decreasing in N.
    """
    check_kind_side(kind, side)
    check_alpha(kind, alpha)
    check_orders(kind, depth, trunc)
    l_bound = float(l_bound)
    if l_bound < 0:
        raise ParameterError("l_bound must be >= 0")
    a, b = float(interval[0]), float(interval[1])
    tt = float(t)
    if not 0 < a < b:
        raise DomainError("interval must satisfy 0 < a < b")
    g = alpha + depth if kind == "integral" else depth - alpha
    if side == "left":
        if not a <= tt <= b:
            raise DomainError("t must lie in [a, b] for the left bound")
        logarg = math.log(tt / a)
        width = tt - a
    else:
        if not a <= tt <= b:
            raise DomainError("t must lie in [a, b] for the right bound")
        logarg = math.log(b / tt)
        width = b - tt
    return (
        l_bound
        * math.exp(g * g + g)
        / (gamma(g + 1) * g * trunc ** g)
        * logarg ** g
        * width
    )


def max_lifted_derivative(x: FunctionSpec, depth: int, interval, samples: int = 1001) -> float:
    """Grid estimate of L_n = max |x_{n,1}| over [lo, hi].

    A uniform sample, not a certified maximum; adequate for smooth inputs
    and documented as an estimate when derivatives are finite-difference
    backed.
    """
    if samples < 2:
        raise ParameterError("samples must be >= 2")
    lo, hi = float(interval[0]), float(interval[1])
    if not lo <= hi:
        raise DomainError("interval must satisfy lo <= hi")
    grid = np.linspace(lo, hi, samples)
    return float(np.max(np.abs(lifted_derivative(x, depth, 1, grid))))
