"""Hadamard fractional integrals and derivatives via integer-order expansions.

The package approximates left- and right-sided Hadamard fractional
operators with a truncated series in ordinary derivatives plus running
moment integrals, carries an explicit truncation bound alongside every
value, checks both against brute-force quadrature and closed forms, and
reduces a fractional differential equation to an augmented ODE system.

Core entry points: `approximate` / `approximate_series` for the expansion,
`hadamard_integral_quad` / `hadamard_derivative_quad` for the reference
operators, `solve_fde` for the ODE reduction, and the `run_*` pipeline
functions that back the CLI and the HTTP service.
"""

from .coefficients import (
    CoefficientSet,
    a_coeff,
    b_coeff,
    coefficient_set,
    max_lifted_derivative,
    truncation_bound,
)
from .errors import (
    DerivativeUnavailableError,
    DomainError,
    GridError,
    HadamardError,
    NonFiniteStateError,
    ParameterError,
    PoleError,
    ResourceGuardError,
)
from .expansion import (
    ApproxResult,
    ExpansionConfig,
    OperatorSpec,
    approximate,
    approximate_series,
    lifted_derivative,
    moment,
)
from .fde_solver import FdeProblem, FdeSolution, replace_operator, solve_fde
from .functions import FunctionSpec, builtin, catalog
from .pipeline import run_approx, run_compare, run_fde, run_sweep
from .quadrature import DEFAULT_QUADRATURE, QuadratureConfig, kernel_quad
from .reference_operators import (
    closed_form,
    closed_form_id,
    dist_metric,
    hadamard_derivative_quad,
    hadamard_integral_quad,
)
from .series import SeriesTable
from .special_functions import erf, gamma, signed_log_gamma, stirling2

__version__ = "0.1.0"

__all__ = [
    "ApproxResult",
    "CoefficientSet",
    "DEFAULT_QUADRATURE",
    "DerivativeUnavailableError",
    "DomainError",
    "ExpansionConfig",
    "FdeProblem",
    "FdeSolution",
    "FunctionSpec",
    "GridError",
    "HadamardError",
    "NonFiniteStateError",
    "OperatorSpec",
    "ParameterError",
    "PoleError",
    "QuadratureConfig",
    "ResourceGuardError",
    "SeriesTable",
    "a_coeff",
    "approximate",
    "approximate_series",
    "b_coeff",
    "builtin",
    "catalog",
    "closed_form",
    "closed_form_id",
    "coefficient_set",
    "dist_metric",
    "erf",
    "gamma",
    "hadamard_derivative_quad",
    "hadamard_integral_quad",
    "kernel_quad",
    "lifted_derivative",
    "max_lifted_derivative",
    "moment",
    "replace_operator",
    "run_approx",
    "run_compare",
    "run_fde",
    "run_sweep",
    "signed_log_gamma",
    "solve_fde",
    "stirling2",
    "truncation_bound",
    "__version__",
]
