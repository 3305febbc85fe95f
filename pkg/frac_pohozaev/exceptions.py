"""Custom exceptions for frac_pohozaev."""

from __future__ import annotations


class FracPohozaevError(Exception):
    """Base exception for all frac_pohozaev errors."""

    pass


class DomainError(FracPohozaevError, ValueError):
    """Raised when an argument lies outside the domain of an operation."""

    pass


class ConvergenceError(FracPohozaevError):
    """Raised when an iterative evaluation exhausts its iteration budget."""

    def __init__(self, routine: str, iterations: int, detail: str | None = None) -> None:
        message = f"{routine} did not converge within {iterations} iterations"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)
        self.routine = routine
        self.iterations = iterations


class QuadratureBudgetError(FracPohozaevError):
    """Raised when a quadrature cannot reach its tolerance within the configured budget."""

    def __init__(self, what: str, estimate: float, tolerance: float) -> None:
        super().__init__(
            f"Quadrature budget exceeded for {what}: "
            f"error estimate {estimate:.3e} > tolerance {tolerance:.3e}"
        )
        self.what = what
        self.estimate = estimate
        self.tolerance = tolerance


class HypothesisError(FracPohozaevError):
    """Raised when a hypothesis required by an identity is not satisfied."""

    def __init__(self, identity_id: str, hypothesis: str, detail: str | None = None) -> None:
        message = f"Identity '{identity_id}' requires {hypothesis}"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)
        self.identity_id = identity_id
        self.hypothesis = hypothesis


class ConfigurationError(FracPohozaevError):
    """Raised when configuration is invalid or missing."""

    pass


class IdentityNotFoundError(FracPohozaevError):
    """Raised when a requested identity is not registered."""

    pass


class RangeError(FracPohozaevError):
    """Raised when a kernel value is not representable as a finite double."""

    def __init__(self, quantity: str, detail: str | None = None) -> None:
        message = f"{quantity} is outside the floating-point range"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)
        self.quantity = quantity
