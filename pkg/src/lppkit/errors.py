"""Exception types shared across lppkit."""


class LppkitError(Exception):
    """Base class for all lppkit errors."""


class ParameterError(LppkitError, ValueError):
    """Invalid model parameters (rates, state vectors, thresholds)."""


class RangeError(LppkitError, IndexError):
    """Query outside the populated region of a growth field."""


class OraclePrecisionError(LppkitError):
    """Truncation error of an exact oracle exceeds the caller's tolerance."""


class ContractError(LppkitError, ValueError):
    """A function was called outside its documented contract."""


class EvaluationError(LppkitError, ArithmeticError):
    """A quadrature or kernel evaluation produced a non-finite value."""


class TruncationError(LppkitError):
    """A truncated contour or domain is too short for the requested accuracy."""


class ContourPlacementError(LppkitError, ValueError):
    """A contour does not separate the poles it is required to separate."""


class NumericalHealthError(LppkitError):
    """A computed probability failed a numerical-health check."""
