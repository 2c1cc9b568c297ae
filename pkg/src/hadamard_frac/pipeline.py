"""Orchestration: validated requests in, tables out.

Both the HTTP service and the CLI sit on these four entry points; all
transport layers stay thin.  Everything here returns plain data
(SeriesTable plus scalars) and signals failure through the package error
types, which the transports map to status payloads and exit codes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coefficients import check_orders
from .errors import DomainError, NonFiniteStateError, ParameterError
from .expansion import ExpansionConfig, OperatorSpec, approximate_series
from .fde_solver import FdeProblem, solve_fde
from .functions import FunctionSpec, builtin
from .quadrature import QuadratureConfig
from .reference_operators import (
    closed_form,
    closed_form_id,
    dist_metric,
    hadamard_derivative_quad,
    hadamard_integral_quad,
)
from .series import SeriesTable

__all__ = [
    "VIOLATION_SLACK",
    "CompareOutcome",
    "FdeOutcome",
    "resolve_function",
    "run_approx",
    "run_compare",
    "run_fde",
    "run_sweep",
    "sample_grid",
]

# Row-wise slack when checking abs_err <= bound: absorbs quadrature error in
# the reference and in the moments without masking real soundness bugs.
VIOLATION_SLACK = 1e-7


@dataclass(frozen=True)
class CompareOutcome:
    table: SeriesTable
    dist: float
    violations: int


@dataclass(frozen=True)
class FdeOutcome:
    table: SeriesTable
    dist: float


def resolve_function(fn: str | None, table_text: str | None) -> FunctionSpec:
    if (fn is None) == (table_text is None):
        raise ParameterError("exactly one of fn and table must be given")
    if fn is not None:
        return builtin(fn)
    table = SeriesTable.from_csv(table_text)
    return FunctionSpec.from_table("table", table.column("t"), table.column("x"))


def sample_grid(a: float, b: float, side: str, points: int) -> np.ndarray:
    """Uniform evaluation grid that excludes the anchor endpoint.

    Left operators sample (a, b], right ones [a, b): the omitted endpoint is
    where derivative-kind values diverge.
    """
    if points < 1:
        raise ParameterError("points must be >= 1")
    if side == "left":
        steps = np.arange(1, points + 1)
    else:
        steps = np.arange(0, points)
    return a + (b - a) * steps / points


def _expansion_parts(kind, side, alpha, a, b, depth, trunc, points,
                     panels, nodes_per_panel, lift, fn, table_text):
    x = resolve_function(fn, table_text)
    op = OperatorSpec(kind, side, float(alpha), float(a), float(b))
    if x.domain is not None:
        lo, hi = x.domain
        if op.a < lo or op.b > hi:
            raise DomainError("operator interval exceeds the table domain")
    quad = QuadratureConfig(panels, nodes_per_panel, lift)
    config = ExpansionConfig(depth, trunc, quad, 1001)
    grid = sample_grid(op.a, op.b, side, points)
    return x, op, quad, config, grid


def run_approx(*, kind, side, alpha, a, b, depth, trunc, fn=None, table_text=None,
               points=200, panels=64, nodes_per_panel=8,
               lift="power_substitution") -> SeriesTable:
    x, op, _, config, grid = _expansion_parts(
        kind, side, alpha, a, b, depth, trunc, points,
        panels, nodes_per_panel, lift, fn, table_text)
    return approximate_series(x, op, config, grid)


def _reference_values(x, op, quad, grid, reference):
    """Resolve and evaluate the ground-truth curve; returns (mode, values)."""
    closed_id = None
    if op.side == "left" and op.alpha == 0.5 and op.a == 1.0:
        closed_id = closed_form_id(op.kind, x.fn_id)
    if reference == "auto":
        reference = "closed" if closed_id is not None else "quad"
    if reference == "closed":
        if closed_id is None:
            raise ParameterError(
                "closed-form reference unavailable for this configuration"
            )
        return "closed", closed_form(closed_id, grid)
    if reference != "quad":
        raise ParameterError("reference must be one of auto, closed, quad")
    if op.kind == "integral":
        values = hadamard_integral_quad(x, op.alpha, op.a, grid, op.side, op.b, quad)
    else:
        values = hadamard_derivative_quad(x, op.alpha, op.a, grid, op.side, op.b, quad)
    return "quad", values


def run_compare(*, kind, side, alpha, a, b, depth, trunc, fn=None, table_text=None,
                points=200, panels=64, nodes_per_panel=8,
                lift="power_substitution", reference="auto") -> CompareOutcome:
    x, op, quad, config, grid = _expansion_parts(
        kind, side, alpha, a, b, depth, trunc, points,
        panels, nodes_per_panel, lift, fn, table_text)
    mode, exact = _reference_values(x, op, quad, grid, reference)
    series = approximate_series(x, op, config, grid)
    approx = series.column("approx")
    bound = series.column("bound")
    abs_err = np.abs(approx - exact)
    violations = int(np.sum(abs_err > bound + VIOLATION_SLACK))
    dist = dist_metric(approx, exact, grid)
    metadata = dict(series.metadata)
    metadata["reference"] = mode
    table = SeriesTable(
        columns=[
            ("t", grid),
            ("exact", np.asarray(exact, dtype=float)),
            ("approx", approx),
            ("abs_err", abs_err),
            ("bound", bound),
        ],
        metadata=metadata,
    )
    return CompareOutcome(table, dist, violations)


def run_sweep(*, kind, side, alpha, a, b, depth_list, trunc_list, fn=None,
              table_text=None, points=200, panels=64, nodes_per_panel=8,
              lift="power_substitution", reference="auto") -> SeriesTable:
    depths = [int(v) for v in depth_list]
    truncs = [int(v) for v in trunc_list]
    if not depths or not truncs:
        raise ParameterError("sweep lists must be non-empty")
    for depth in depths:
        for trunc in truncs:
            check_orders(kind, depth, trunc)
    rows = []
    x = op = quad = grid = None
    mode = exact = None
    for depth in depths:
        for trunc in truncs:
            x, op, quad, config, grid = _expansion_parts(
                kind, side, alpha, a, b, depth, trunc, points,
                panels, nodes_per_panel, lift, fn, table_text)
            if exact is None:
                mode, exact = _reference_values(x, op, quad, grid, reference)
            series = approximate_series(x, op, config, grid)
            dist = dist_metric(series.column("approx"), exact, grid)
            rows.append((float(depth), float(trunc), dist))
    data = np.asarray(rows)
    metadata = {
        "kind": kind,
        "side": side,
        "alpha": repr(float(alpha)),
        "a": repr(float(a)),
        "b": repr(float(b)),
        "fn": x.fn_id,
        "l_mode": x.deriv_mode,
        "reference": mode,
        "points": str(points),
    }
    return SeriesTable(
        columns=[("n", data[:, 0]), ("N", data[:, 1]), ("dist", data[:, 2])],
        metadata=metadata,
    )


def run_fde(*, trunc=2, steps=10_000, start_offset=1e-4, t_end=3.0, c=1.0,
            initial_value=0.0, dump_states=False) -> FdeOutcome:
    problem = FdeProblem(
        alpha=0.5, a=1.0, t_end=float(t_end), c=float(c),
        initial_value=float(initial_value), trunc=int(trunc),
    )
    solution = solve_fde(problem, steps=int(steps), start_offset=float(start_offset))
    exact = np.log(solution.t)
    abs_err = np.abs(solution.x - exact)
    with np.errstate(over="ignore"):
        dist = dist_metric(solution.x, exact, solution.t)
    if not np.isfinite(dist):
        # The state stayed finite but its square overflowed: same failure
        # class as divergence, just caught one power of two earlier.
        raise NonFiniteStateError("solution error measure is non-finite")
    columns = [
        ("t", solution.t),
        ("x_numeric", solution.x),
        ("x_exact", exact),
        ("abs_err", abs_err),
    ]
    if dump_states:
        for idx, p in enumerate(range(2, problem.trunc + 1)):
            columns.append((f"v{p}", solution.moments[:, idx]))
    metadata = {
        "alpha": repr(problem.alpha),
        "a": repr(problem.a),
        "N": str(problem.trunc),
        "steps": str(int(steps)),
        "delta": repr(float(start_offset)),
        "t_end": repr(problem.t_end),
        "c": repr(problem.c),
        "x0": repr(problem.initial_value),
    }
    return FdeOutcome(SeriesTable(columns=columns, metadata=metadata), dist)
