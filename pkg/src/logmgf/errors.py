"""Exception types shared across the library."""


class LogMgfError(Exception):
    """Base class for every error raised by this package."""


class DomainError(LogMgfError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class NonFiniteIntegrand(LogMgfError, ArithmeticError):
    """An integrand evaluation produced inf or nan.

    Carries the offending abscissa in ``x`` so callers can see where the
    integrand blew up (typically the right tail of exp(theta*e^x) for
    theta > 0).
    """

    def __init__(self, message: str, x: float):
        super().__init__(message)
        self.x = x


class NegativeRadicand(LogMgfError, ArithmeticError):
    """The variance-drift radicand went negative (theta < 0, small t)."""

    def __init__(self, message: str, t: float, radicand: float):
        super().__init__(message)
        self.t = t
        self.radicand = radicand


class DivergenceError(LogMgfError, OverflowError):
    """The moment ODE diverged (positive-theta blow-up), with step index."""

    def __init__(self, message: str, step: int):
        super().__init__(message)
        self.step = step


class NegativeVariance(LogMgfError, ArithmeticError):
    """Variance clamping exceeded the configured tolerance of events."""


class ConvergenceError(LogMgfError, ArithmeticError):
    """An iterative solver failed to meet its residual contract."""


class PathOverflow(LogMgfError, OverflowError):
    """A simulated path exceeded the overflow guard."""
