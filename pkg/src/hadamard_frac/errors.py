"""Exception types shared across the package."""

__all__ = [
    "HadamardError",
    "ParameterError",
    "DomainError",
    "PoleError",
    "DerivativeUnavailableError",
    "GridError",
    "ResourceGuardError",
    "NonFiniteStateError",
]


class HadamardError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(HadamardError):
    """A knob or flag combination is structurally invalid."""


class DomainError(HadamardError):
    """A numeric input lies outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Gamma requested at (or within tolerance of) a non-positive integer."""


class DerivativeUnavailableError(HadamardError):
    """A derivative order beyond what the function description can supply."""


class GridError(HadamardError):
    """An evaluation grid or table is empty, unsorted, or mismatched."""


class ResourceGuardError(HadamardError):
    """A requested computation exceeds the configured resource ceiling."""


class NonFiniteStateError(HadamardError):
    """The ODE state left the finite range during integration."""
