"""Exception types shared across the package."""


class MultigradError(Exception):
    """Base class for all package errors."""


class CapabilityError(MultigradError):
    """A field lacks a capability an operation needs (complex evaluation, oracle)."""


class EvaluationError(MultigradError):
    """A field returned a non-finite value at a probe point."""


class DegenerateGradientError(MultigradError):
    """A gradient vector is too close to zero to be normalized."""


class DimensionError(MultigradError, ValueError):
    """Mismatched dimensions between points, directions, frames or fields."""
