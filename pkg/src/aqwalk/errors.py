"""Exception types shared across the package."""


class AqwalkError(Exception):
    """Base class for all package errors."""


class BoundaryOverflowError(AqwalkError):
    """Amplitude would leave the lattice. Indicates an undersized field."""


class SingularParameterError(AqwalkError):
    """Parameters hit a singular point of an analytic expression."""


class NonConvergenceError(AqwalkError):
    """An iterative estimate failed its internal convergence check."""


class ConfigError(AqwalkError):
    """Invalid experiment configuration. Carries the offending field name."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class RealizationError(AqwalkError):
    """An ensemble realization failed. Carries the realization index."""

    def __init__(self, index: int, original: BaseException):
        self.index = index
        self.original = original
        super().__init__(f"realization {index}: {type(original).__name__}: {original}")
