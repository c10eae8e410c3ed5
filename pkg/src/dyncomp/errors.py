"""Exception hierarchy shared by all dyncomp modules."""

from __future__ import annotations

from typing import Any


class DynCompError(Exception):
    """Base class for all dyncomp errors."""


class InvalidArgumentError(DynCompError, ValueError):
    """An argument violates a documented precondition."""


class DomainError(InvalidArgumentError):
    """A value lies outside the mathematical domain of an operation."""


class InsufficientDataError(InvalidArgumentError):
    """Not enough samples for the requested statistic."""


class ApproximationDomainError(InvalidArgumentError):
    """A closed-form approximation was requested outside its range of validity."""


class NumericalDegeneracyError(DynCompError, ArithmeticError):
    """A matrix factorization or solve failed on (near-)singular input."""

    def __init__(self, message: str, condition: float | None = None) -> None:
        if condition is not None:
            message = f"{message} (condition number ~ {condition:.3e})"
        super().__init__(message)
        self.condition = condition


class SpectralFloorError(NumericalDegeneracyError):
    """A power spectral density estimate is nonpositive at some frequency."""


class JitterRequiredError(NumericalDegeneracyError):
    """Duplicate samples make a nearest-neighbor distance zero."""


class WhiteningError(NumericalDegeneracyError):
    """A covariance is too close to singular to whiten."""


class DivergenceError(NumericalDegeneracyError):
    """A numerical integration blew up."""


class KernelDegeneracyError(NumericalDegeneracyError):
    """A kernel matrix is not positive definite even after jitter."""


class SingularDesignError(NumericalDegeneracyError):
    """A regression design matrix is rank deficient."""


class FitFailureError(DynCompError):
    """Every optimization restart failed.

    Attributes:
        restarts: Per-restart diagnostics (dicts as written to the fit report)
    """

    def __init__(self, message: str, restarts: list[dict[str, Any]] | None = None) -> None:
        super().__init__(message)
        self.restarts = restarts or []
