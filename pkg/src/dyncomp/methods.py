"""Registry of subspace-fitting methods, addressable by name or abbreviation."""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass

from dyncomp.baselines.linear import cca, pca, sfa
from dyncomp.config.schema import FitOptions
from dyncomp.core.timeseries import Projection
from dyncomp.covariance.crosscov import CrossCovSet, project_crosscov
from dyncomp.errors import InvalidArgumentError, NumericalDegeneracyError
from dyncomp.optim.fit import fit_dca, fit_dca_deflation
from dyncomp.optim.report import FitReport
from dyncomp.predinfo.gaussian import pi_time_domain

logger = logging.getLogger(__name__)

FitFunction = Callable[[CrossCovSet, FitOptions, int], FitReport]


@dataclass(frozen=True)
class FitMethod:
    """A registered method.

    Attributes:
        name: Canonical name, words separated by '-'
        func: Called as func(covs, options, lag)
        help: One-line description
        uses_window: Whether the fit itself depends on T
    """

    name: str
    func: FitFunction
    help: str = ""
    uses_window: bool = True

    def required_lags(self, opts: FitOptions, lag: int = 1) -> int:
        """Number of cross-covariance lags to estimate before fitting."""
        return max(2 * opts.T, lag + 1)


class MethodRegistry:
    """Registry of fit methods."""

    def __init__(self) -> None:
        self._methods: dict[str, FitMethod] = {}

    def register(
        self, name: str, help: str = "", uses_window: bool = True
    ) -> Callable[[FitFunction], FitFunction]:
        """Decorator to register a method."""
        def decorator(func: FitFunction) -> FitFunction:
            self._methods[name] = FitMethod(name=name, func=func, help=help, uses_window=uses_window)
            return func
        return decorator

    def get(self, name: str) -> FitMethod | None:
        """Get a method by name or abbreviation."""
        # Exact match first
        if name in self._methods:
            return self._methods[name]

        matches = self._match_abbreviation(name)
        if len(matches) == 1:
            return self._methods[matches[0]]
        elif len(matches) > 1:
            raise InvalidArgumentError(f"Ambiguous method '{name}': matches {matches}")

        return None

    def resolve(self, name: str) -> FitMethod:
        """Like :meth:`get`, but unknown names are an error."""
        method = self.get(name)
        if method is None:
            raise InvalidArgumentError(
                f"Unknown method '{name}'; available: {', '.join(self.list_methods())}"
            )
        return method

    def _match_abbreviation(self, abbrev: str) -> list[str]:
        """Match an abbreviation word by word: 'dca-d' matches 'dca-deflate'."""
        abbrev_parts = abbrev.split("-")
        matches: list[str] = []

        for method_name in self._methods:
            method_parts = method_name.split("-")
            if len(abbrev_parts) > len(method_parts):
                continue
            if all(method_parts[i].startswith(part) for i, part in enumerate(abbrev_parts)):
                matches.append(method_name)

        return matches

    def list_methods(self) -> list[str]:
        """List all registered method names."""
        return sorted(self._methods.keys())

    def fit(self, name: str, covs: CrossCovSet, opts: FitOptions, lag: int = 1) -> FitReport:
        """Fit by method name or abbreviation."""
        method = self.resolve(name)
        if covs.two_t < method.required_lags(opts, lag) and method.uses_window:
            raise InvalidArgumentError(
                f"Method '{method.name}' needs {method.required_lags(opts, lag)} lags, got {covs.two_t}"
            )
        return method.func(covs, opts, lag)


# Global method registry
methods = MethodRegistry()


def _pi_or_none(covs: CrossCovSet, projection: Projection, T: int) -> float | None:
    if covs.two_t < 2 * T:
        return None
    try:
        return pi_time_domain(project_crosscov(covs, projection), T).value
    except NumericalDegeneracyError as e:
        logger.warning("Predictive information of the fitted subspace is undefined: %s", e)
        return None


def _lagged(covs: CrossCovSet, lag: int) -> CrossCovSet:
    if lag >= covs.two_t:
        raise InvalidArgumentError(f"lag={lag} needs {lag + 1} cross-covariance lags, got {covs.two_t}")
    return covs


@methods.register("dca", "Joint DCA: maximize I_T of a d-dimensional projection")
def _fit_joint(covs: CrossCovSet, opts: FitOptions, lag: int) -> FitReport:
    return fit_dca(covs, opts.model_copy(update={"method": "joint_time_domain"}))


@methods.register("dca-deflate", "DCA by deflation with the time-domain objective")
def _fit_deflate(covs: CrossCovSet, opts: FitOptions, lag: int) -> FitReport:
    return fit_dca_deflation(covs, opts.model_copy(update={"method": "deflation_time_domain"}))


@methods.register("dca-fft-deflate", "DCA by deflation with the frequency-domain objective")
def _fit_fft_deflate(covs: CrossCovSet, opts: FitOptions, lag: int) -> FitReport:
    return fit_dca_deflation(covs, opts.model_copy(update={"method": "deflation_freq_domain"}))


@methods.register("pca", "Top-d principal components", uses_window=False)
def _fit_pca(covs: CrossCovSet, opts: FitOptions, lag: int) -> FitReport:
    projection = pca(covs[0], opts.d)
    return FitReport(projection, _pi_or_none(covs, projection, opts.T), "pca", opts.T)


@methods.register("sfa", "Slow feature analysis at the given lag", uses_window=False)
def _fit_sfa(covs: CrossCovSet, opts: FitOptions, lag: int) -> FitReport:
    covs = _lagged(covs, lag)
    projection = sfa(covs[0], covs[lag], opts.d)
    return FitReport(projection, _pi_or_none(covs, projection, opts.T), "sfa", opts.T)


@methods.register("cca", "Past/future canonical correlation analysis at the given lag", uses_window=False)
def _fit_cca(covs: CrossCovSet, opts: FitOptions, lag: int) -> FitReport:
    covs = _lagged(covs, lag)
    past, future = cca(covs[0], covs[lag], opts.d)
    return FitReport(
        past, _pi_or_none(covs, past, opts.T), "cca", opts.T, future_projection=future
    )
