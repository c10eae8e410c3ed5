"""Closed-form asymptotic predictive information for stationary Gaussian kernels."""

from __future__ import annotations

import numpy as np
from scipy.special import zeta

from dyncomp.errors import ApproximationDomainError, InvalidArgumentError
from dyncomp.predinfo.estimate import PIEstimate, PIMethod

ZETA_3 = float(zeta(3.0))

# The τ⁴ law is derived for τ >> 1.
SQUARED_EXPONENTIAL_MIN_TAU = 2.0


def pi_analytic_exponential(tau: float) -> PIEstimate:
    """Asymptotic predictive information of f(Δt) = exp(-|Δt|/τ).

    The process is AR(1), so this is the information between two consecutive
    samples: -½ log(1 - e^{-2/τ}).
    """
    if not tau > 0:
        raise InvalidArgumentError(f"tau must be positive, got {tau}")
    value = -0.5 * float(np.log(-np.expm1(-2.0 / tau)))
    return PIEstimate(
        value=value,
        method=PIMethod.ANALYTIC,
        T=0,
        diagnostics={"kernel": "exponential", "tau": tau, "asymptotic": True},
    )


def pi_analytic_squared_exponential(tau: float) -> PIEstimate:
    """Large-τ approximation (ζ(3)/8) τ⁴ for f(Δt) = exp(-Δt²/τ²)."""
    if tau < SQUARED_EXPONENTIAL_MIN_TAU:
        raise ApproximationDomainError(
            f"The squared-exponential formula assumes tau >> 1; got tau={tau} "
            f"(minimum {SQUARED_EXPONENTIAL_MIN_TAU})"
        )
    return PIEstimate(
        value=ZETA_3 / 8.0 * tau**4,
        method=PIMethod.ANALYTIC,
        T=0,
        diagnostics={
            "kernel": "squared_exponential",
            "tau": tau,
            "asymptotic": True,
            "approximation": True,
        },
    )
