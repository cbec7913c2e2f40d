"""Exception types shared across the package."""


class PicodError(Exception):
    """Base class for all package errors."""


class InvalidInputError(PicodError, ValueError):
    """Malformed instance, coloring, matrix, or argument."""


class BudgetExceeded(PicodError):
    """An exhaustive search ran past its configured bound."""

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class ResampleCapExceeded(PicodError):
    """Randomized resampling hit its attempt cap without a valid result."""

    def __init__(self, message, attempts):
        super().__init__(message)
        self.attempts = attempts
