"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class ConfigError(ValueError):
    """Invalid run or sweep configuration, detected before any computation."""


class ConvergenceError(ArithmeticError):
    """Numerical integration did not reach its tolerance within budget.

    The last estimate and its error bound are kept so callers can still
    inspect them.
    """

    def __init__(self, message, estimate=float("nan"), error=float("nan")):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class BracketError(ArithmeticError):
    """Root bracket does not straddle the violation boundary."""
