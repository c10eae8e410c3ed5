"""Predictive-information estimators."""

from dyncomp.predinfo.analytic import pi_analytic_exponential, pi_analytic_squared_exponential
from dyncomp.predinfo.estimate import PIEstimate, PIMethod
from dyncomp.predinfo.gaussian import gaussian_lagged_mi, logdet, pi_time_domain
from dyncomp.predinfo.knn import mi_knn, pi_knn
from dyncomp.predinfo.spectral import DEFAULT_SPECTRAL_FLOOR, WindowName, pi_freq_domain

__all__ = [
    "DEFAULT_SPECTRAL_FLOOR",
    "PIEstimate",
    "PIMethod",
    "WindowName",
    "gaussian_lagged_mi",
    "logdet",
    "mi_knn",
    "pi_analytic_exponential",
    "pi_analytic_squared_exponential",
    "pi_freq_domain",
    "pi_knn",
    "pi_time_domain",
]
