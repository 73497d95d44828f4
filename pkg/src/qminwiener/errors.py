"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the admissible domain of an operation."""


class SaturationError(DomainError):
    """The truncated potential is saturated (equal to 1) at the requested radius."""


class ConvergenceError(RuntimeError):
    """An iterative solver failed to reach its tolerance.

    This signals a solver defect rather than a bad input.
    """
