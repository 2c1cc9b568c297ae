"""Scalar special functions with explicit pole handling.

Everything is float64 and deterministic.  Gamma and log-gamma delegate to
the C library routines in :mod:`math`; what this module adds is pole
detection, sign tracking for negative arguments (so coefficient ratios can
be assembled in log space without overflow), and an exact integer table of
Stirling numbers of the second kind.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple

from .errors import DomainError, PoleError

__all__ = [
    "GAMMA_POLE_TOL",
    "STIRLING_MAX",
    "SignedLogGamma",
    "erf",
    "gamma",
    "signed_log_gamma",
    "stirling2",
]

GAMMA_POLE_TOL = 1e-12
STIRLING_MAX = 25


def _pole_at(x: float) -> bool:
    r = round(x)
    return r <= 0 and abs(x - r) < GAMMA_POLE_TOL


def gamma(x: float) -> float:
    """Gamma(x) for real non-pole arguments.

    Arguments within 1e-12 of a non-positive integer raise PoleError.
    Arguments beyond the float64 range (x > ~171.6) return +inf instead of
    raising, since callers treat overflow as a saturating magnitude.
    """
    x = float(x)
    if math.isnan(x):
        raise DomainError("gamma: argument is NaN")
    if _pole_at(x):
        raise PoleError(f"gamma pole at x={x!r}")
    try:
        return math.gamma(x)
    except OverflowError:
        return math.inf


class SignedLogGamma(NamedTuple):
    log_abs: float
    sign: float


def signed_log_gamma(x: float) -> SignedLogGamma:
    """Return (log|Gamma(x)|, sign of Gamma(x)).

    Gamma alternates sign between consecutive negative integers: it is
    negative on (-1, 0), positive on (-2, -1), and so on, which makes the
    sign -1 exactly when floor(x) is odd.
    """
    x = float(x)
    if math.isnan(x):
        raise DomainError("signed_log_gamma: argument is NaN")
    if _pole_at(x):
        raise PoleError(f"log-gamma pole at x={x!r}")
    if x > 0:
        return SignedLogGamma(math.lgamma(x), 1.0)
    sign = -1.0 if math.floor(x) % 2 != 0 else 1.0
    return SignedLogGamma(math.lgamma(x), sign)


def erf(x: float) -> float:
    """Error function of a real scalar."""
    return math.erf(float(x))


@lru_cache(maxsize=1)
def _stirling_table() -> tuple[tuple[int, ...], ...]:
    # S(k, j) = j S(k-1, j) + S(k-1, j-1); exact integers, no float rounding.
    size = STIRLING_MAX + 1
    table = [[0] * size for _ in range(size)]
    table[0][0] = 1
    for k in range(1, size):
        for j in range(1, k + 1):
            table[k][j] = j * table[k - 1][j] + table[k - 1][j - 1]
    return tuple(tuple(row) for row in table)


def stirling2(k: int, j: int) -> int:
    """Stirling number of the second kind S(k, j) as an exact integer.

    The table is bounded at k, j <= 25; indices past the bound raise
    DomainError rather than silently losing precision.
    """
    k = int(k)
    j = int(j)
    if k < 0 or j < 0:
        raise DomainError(f"stirling2: indices must be non-negative, got ({k}, {j})")
    if k > STIRLING_MAX or j > STIRLING_MAX:
        raise DomainError(
            f"stirling2: index out of table, bound is {STIRLING_MAX}, got ({k}, {j})"
        )
    return _stirling_table()[k][j]
