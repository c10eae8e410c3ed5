"""Result type shared by all predictive-information estimators."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class PIMethod(str, Enum):
    """How a predictive-information value was obtained."""

    TIME_DOMAIN = "time_domain"
    FREQ_DOMAIN = "freq_domain"
    ANALYTIC = "analytic"
    KNN = "knn"


@dataclass(frozen=True)
class PIEstimate:
    """A predictive-information (or mutual-information) value in nats.

    Attributes:
        value: Estimate in nats
        method: Estimator used
        T: Window length; 0 marks an asymptotic (T -> infinity) value
        diagnostics: Method-specific details (cepstrum coefficients, k, ...)
    """

    value: float
    method: PIMethod
    T: int = 0
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation."""
        return {
            "value": self.value,
            "method": self.method.value,
            "T": self.T,
            "diagnostics": self.diagnostics,
        }
