"""Panel-composite Gauss-Legendre rules for log-kernel integrals.

After the substitution xi = ln(t/tau) every operator integral here becomes

    int_0^L xi^(g-1) f(xi) dxi,   g > 0,

with f smooth.  For g < 1 the kernel endpoint xi = 0 is singular; the
power substitution u = xi^g absorbs the kernel factor exactly, so the
lifted integrand is bounded.  The opposite endpoint xi = L corresponds to
tau approaching the anchor; panels are graded toward it with a nested
dyadic tail so that doubling the panel count refines the mesh instead of
reshuffling it (a non-nested grading breaks monotone convergence checks).

Integrands receive both xi and rem = L - xi.  Callers reconstruct
tau = anchor * exp(rem), which stays strictly on the correct side of the
anchor in float64; the naive tau = t * exp(-xi) rounds onto the anchor in
the deepest tail panels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, ParameterError, ResourceGuardError

__all__ = [
    "DEFAULT_QUADRATURE",
    "FAR_TAIL_MAX",
    "LIFT_MODES",
    "RESOURCE_CEILING",
    "QuadratureConfig",
    "kernel_quad",
    "panel_edges",
    "unit_rule",
]

RESOURCE_CEILING = 10_000_000
LIFT_MODES = ("power_substitution", "none")
FAR_TAIL_MAX = 48


@dataclass(frozen=True)
class QuadratureConfig:
    """Panel count, Gauss-Legendre order per panel, and lift mode."""

    panels: int = 64
    nodes_per_panel: int = 8
    singularity_lift: str = "power_substitution"

    def __post_init__(self):
        if self.panels < 1 or self.nodes_per_panel < 1:
            raise ParameterError("panels and nodes_per_panel must be >= 1")
        if self.panels * self.nodes_per_panel > RESOURCE_CEILING:
            raise ResourceGuardError(
                "panels * nodes_per_panel exceeds the ceiling "
                f"{RESOURCE_CEILING}"
            )
        if self.singularity_lift not in LIFT_MODES:
            raise ParameterError(f"singularity_lift must be one of {LIFT_MODES}")


DEFAULT_QUADRATURE = QuadratureConfig()


def panel_edges(panels: int) -> np.ndarray:
    """Nested graded edges on [0, 1]: uniform half plus dyadic tail toward 1."""
    if panels < 1:
        raise ParameterError("panels must be >= 1")
    if panels == 1:
        return np.array([0.0, 1.0])
    far = min(FAR_TAIL_MAX, panels // 2)
    uniform = panels - far
    edges = [0.5 * k / uniform for k in range(uniform)]
    edges.extend(1.0 - 2.0 ** (-j) for j in range(1, far + 1))
    edges.append(1.0)
    return np.array(edges)


@lru_cache(maxsize=128)
def unit_rule(panels: int, nodes_per_panel: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite rule on [0, 1]: flattened nodes and weights, cached read-only."""
    gl_x, gl_w = np.polynomial.legendre.leggauss(nodes_per_panel)
    edges = panel_edges(panels)
    widths = np.diff(edges)
    nodes = (edges[:-1, None] + widths[:, None] * (gl_x + 1.0)[None, :] / 2).ravel()
    weights = (widths[:, None] * gl_w[None, :] / 2).ravel()
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def kernel_quad(integrand, upper, exponent, config: QuadratureConfig = DEFAULT_QUADRATURE):
    """Integrate xi^(exponent-1) * integrand(xi, rem) over xi in [0, upper].

    upper may be a scalar or an array (one integral per entry); integrand
    receives matrices shaped (len(upper), panels*nodes) and must evaluate
    vectorized.  Entries with upper == 0 integrate to exactly 0.
    """
    g = float(exponent)
    if not g > 0:
        raise ParameterError("kernel exponent must be positive")
    up = np.atleast_1d(np.asarray(upper, dtype=float))
    if np.any(up < 0) or not np.all(np.isfinite(up)):
        raise DomainError("integration length must be finite and >= 0")
    nodes, weights = unit_rule(config.panels, config.nodes_per_panel)
    out = np.zeros_like(up)
    pos = up > 0
    if np.any(pos):
        upp = up[pos]
        if config.singularity_lift == "power_substitution" and g < 1.0:
            big_u = upp ** g
            u = big_u[:, None] * nodes[None, :]
            xi = u ** (1.0 / g)
            rem = upp[:, None] - xi
            vals = np.asarray(integrand(xi, rem), dtype=float)
            out[pos] = (vals * weights[None, :]).sum(axis=1) * big_u / g
        else:
            xi = upp[:, None] * nodes[None, :]
            rem = upp[:, None] - xi
            vals = np.asarray(integrand(xi, rem), dtype=float)
            vals = vals * xi ** (g - 1.0)
            out[pos] = (vals * weights[None, :]).sum(axis=1) * upp
    return float(out[0]) if np.ndim(upper) == 0 else out
