"""Tests for the predictive-information estimators."""

import logging
import math

import numpy as np
import pytest

from dyncomp.config.schema import KernelSpec
from dyncomp.covariance.crosscov import CrossCovSet
from dyncomp.errors import (
    ApproximationDomainError,
    InsufficientDataError,
    InvalidArgumentError,
    JitterRequiredError,
    SpectralFloorError,
)
from dyncomp.predinfo import (
    PIMethod,
    gaussian_lagged_mi,
    mi_knn,
    pi_analytic_exponential,
    pi_analytic_squared_exponential,
    pi_freq_domain,
    pi_knn,
    pi_time_domain,
)
from dyncomp.predinfo.gaussian import logdet
from dyncomp.predinfo.spectral import cepstral_pi_gradient, lag_taper
from dyncomp.synth.gp import gp_generate, kernel_autocov, kernel_crosscov

EXTENDED_PRECISION = np.finfo(np.longdouble).eps < np.finfo(np.float64).eps


def exponential_covs(tau: float, num_lags: int) -> CrossCovSet:
    return kernel_crosscov(KernelSpec(name="exponential", tau=tau), num_lags)


class TestTimeDomain:
    """Tests for pi_time_domain function."""

    @pytest.mark.parametrize("tau", [1.0, 5.0, 100.0])
    def test_matches_exponential_formula_for_every_T(self, tau):
        """Test a Markov process has the same information for every window length."""
        expected = pi_analytic_exponential(tau).value
        covs = exponential_covs(tau, 32)

        for T in range(1, 17):
            assert pi_time_domain(covs, T).value == pytest.approx(expected, abs=1e-9)

    def test_tau_2_value(self):
        """Test -½ log(1 - e^{-1}) at τ = 2."""
        expected = -0.5 * np.log(-np.expm1(-1.0))

        assert pi_time_domain(exponential_covs(2.0, 2), 1).value == pytest.approx(expected, abs=1e-12)

    def test_white_noise_is_zero(self):
        """Test uncorrelated samples carry no predictive information."""
        covs = CrossCovSet(np.stack([np.diag([1.0, 3.0]), np.zeros((2, 2)), np.zeros((2, 2)), np.zeros((2, 2))]))

        assert pi_time_domain(covs, 2).value == pytest.approx(0.0, abs=1e-12)

    def test_nonnegative_and_nondecreasing(self, var_covs):
        """Test information is nonnegative and grows with the window."""
        values = [pi_time_domain(var_covs, T).value for T in range(1, 7)]

        assert values[0] >= 0
        assert all(b >= a - 1e-10 for a, b in zip(values, values[1:]))

    def test_diagnostics(self, ar1_covs):
        """Test the log-determinants are reported."""
        estimate = pi_time_domain(ar1_covs, 2)

        assert estimate.method is PIMethod.TIME_DOMAIN
        assert estimate.T == 2
        assert estimate.value == pytest.approx(
            estimate.diagnostics["logdet_T"] - 0.5 * estimate.diagnostics["logdet_2T"]
        )
        assert estimate.diagnostics["shift"] == 0.0

    def test_singular_is_regularized(self):
        """Test a deterministic constant process gets a finite value after regularization."""
        estimate = pi_time_domain(CrossCovSet(np.ones(4)), 2)

        assert math.isfinite(estimate.value)
        assert estimate.diagnostics["shift"] > 0

    def test_needs_2T_lags(self, ar1_covs):
        """Test the window may use at most half the available lags."""
        with pytest.raises(InvalidArgumentError, match="needs 10 lags"):
            pi_time_domain(ar1_covs, 5)

    def test_lagged_mi_ar1(self, ar1_covs):
        """Test I(x_t; x_{t+1}) of AR(1) is -½ log(1 - a²)."""
        assert gaussian_lagged_mi(ar1_covs, np.ones((1, 1))) == pytest.approx(-0.5 * math.log(1 - 0.64))

    def test_logdet(self):
        """Test log|Σ| of a diagonal matrix."""
        assert logdet(np.diag([2.0, 3.0])) == pytest.approx(math.log(6.0))


class TestAnalytic:
    """Tests for the closed-form estimates."""

    def test_exponential_values(self):
        """Test reference values of -½ log(1 - e^{-2/τ})."""
        assert pi_analytic_exponential(1.0).value == pytest.approx(0.07271, abs=1e-4)
        assert pi_analytic_exponential(100.0).value == pytest.approx(1.961, abs=1e-3)

    def test_exponential_large_tau_limit(self):
        """Test the ½ log(τ/2) asymptote."""
        value = pi_analytic_exponential(100.0).value

        assert value == pytest.approx(0.5 * math.log(50.0), rel=3e-3)

    def test_exponential_small_tau(self):
        """Test the value vanishes as τ -> 0."""
        assert pi_analytic_exponential(0.05).value < 1e-8

    def test_exponential_rejects_nonpositive(self):
        """Test τ must be positive."""
        with pytest.raises(InvalidArgumentError):
            pi_analytic_exponential(0.0)

    def test_squared_exponential(self):
        """Test (ζ(3)/8) τ⁴ and its scaling."""
        value = pi_analytic_squared_exponential(10.0)

        assert value.value == pytest.approx(1502.6, rel=1e-4)
        assert value.diagnostics["approximation"] is True
        ratio = pi_analytic_squared_exponential(8.0).value / pi_analytic_squared_exponential(4.0).value
        assert ratio == pytest.approx(16.0)

    def test_squared_exponential_domain(self):
        """Test τ < 2 is outside the approximation's range."""
        with pytest.raises(ApproximationDomainError):
            pi_analytic_squared_exponential(1.5)


class TestFreqDomain:
    """Tests for pi_freq_domain function."""

    def test_white_noise_autocov(self):
        """Test a flat spectrum gives zero information."""
        autocov = np.zeros(8)
        autocov[0] = 1.0

        estimate = pi_freq_domain(None, 4, autocov=autocov)

        assert estimate.value == pytest.approx(0.0, abs=1e-12)
        assert estimate.method is PIMethod.FREQ_DOMAIN
        assert len(estimate.diagnostics["cepstrum"]) == 8

    def test_ar1_autocov_matches_time_domain(self):
        """Test the cepstral value agrees with the time-domain value for AR(1), τ = 10."""
        covs = exponential_covs(10.0, 512)
        freq = pi_freq_domain(None, 256, autocov=covs.lags[:, 0, 0]).value
        time = pi_time_domain(covs, 256).value

        assert freq == pytest.approx(time, rel=0.05)

    @pytest.mark.skipif(not EXTENDED_PRECISION, reason="needs extended-precision floats")
    def test_squared_exponential_autocov(self):
        """Test the τ⁴ law at τ = 4 from exact autocovariances."""
        autocov = kernel_autocov(KernelSpec(name="squared_exponential", tau=4.0), 1024)

        estimate = pi_freq_domain(None, 512, autocov=autocov)

        assert estimate.value == pytest.approx(38.47, rel=0.10)

    def test_series_matches_time_domain(self):
        """Test the Welch estimate of a long AR(1) sample is close to the exact value."""
        series = gp_generate(KernelSpec(name="exponential", tau=3.0), 200_000, seed=5)
        exact = pi_analytic_exponential(3.0).value

        estimate = pi_freq_domain(series, 32)

        assert estimate.diagnostics["mode"] == "series"
        assert estimate.value == pytest.approx(exact, rel=0.15)

    def test_exactly_one_source(self):
        """Test a series and an autocovariance cannot both be given."""
        with pytest.raises(InvalidArgumentError, match="exactly one"):
            pi_freq_domain(np.zeros(10), 2, autocov=np.ones(4))
        with pytest.raises(InvalidArgumentError, match="exactly one"):
            pi_freq_domain(None, 2)

    def test_short_series(self):
        """Test the series must cover one 2T segment."""
        with pytest.raises(InsufficientDataError):
            pi_freq_domain(np.random.default_rng(0).standard_normal(5), 4)

    def test_unknown_window(self):
        """Test only the supported windows are accepted."""
        with pytest.raises(InvalidArgumentError, match="Unknown window"):
            pi_freq_domain(np.random.default_rng(0).standard_normal(64), 4, window_fn="blackman")

    def test_nonpositive_spectrum_without_floor(self):
        """Test a nonpositive spectrum raises when flooring is disabled."""
        # Not a valid autocovariance: |f(1)| > f(0).
        autocov = np.array([1.0, 2.0, 0.0, 0.0])

        with pytest.raises(SpectralFloorError):
            pi_freq_domain(None, 2, window_fn="none", autocov=autocov, spectral_floor=None)

    def test_nonpositive_spectrum_is_clamped(self, caplog):
        """Test the default floor clamps nonpositive bins with a warning."""
        autocov = np.array([1.0, 2.0, 0.0, 0.0])

        with caplog.at_level(logging.WARNING, logger="dyncomp.predinfo.spectral"):
            estimate = pi_freq_domain(None, 2, window_fn="none", autocov=autocov)

        assert math.isfinite(estimate.value)
        assert estimate.diagnostics["floored_bins"] > 0
        assert "nonpositive" in caplog.text

    def test_lag_taper(self):
        """Test the taper starts at one and decays for the Hann window."""
        taper = lag_taper(4)

        assert taper[0] == 1.0
        assert np.all(np.diff(taper) <= 0)
        np.testing.assert_allclose(lag_taper(4, "none"), 1.0 - np.arange(8) / 8)

    def test_gradient_matches_finite_differences(self):
        """Test the cepstral gradient against central differences."""
        autocov = kernel_autocov(KernelSpec(name="exponential", tau=3.0), 8)
        value, grad = cepstral_pi_gradient(autocov, 4)
        h = 1e-6

        for j in range(8):
            step = np.zeros(8)
            step[j] = h
            numeric = (cepstral_pi_gradient(autocov + step, 4)[0] - cepstral_pi_gradient(autocov - step, 4)[0]) / (2 * h)
            assert grad[j] == pytest.approx(numeric, rel=1e-4, abs=1e-7)
        assert value == pytest.approx(pi_freq_domain(None, 4, autocov=autocov).value, rel=1e-10)


class TestKnn:
    """Tests for the nearest-neighbor estimators."""

    def test_correlated_gaussians(self):
        """Test KSG recovers -½ log(1 - ρ²) for correlated Gaussians."""
        rng = np.random.default_rng(0)
        rho = 0.8
        x = rng.standard_normal(4000)
        y = rho * x + math.sqrt(1 - rho**2) * rng.standard_normal(4000)

        estimate = mi_knn(x, y, k=3)

        assert estimate.value == pytest.approx(-0.5 * math.log(1 - rho**2), abs=0.05)
        assert estimate.diagnostics["k"] == 3

    def test_independent_near_zero(self):
        """Test independent samples give an estimate near zero."""
        rng = np.random.default_rng(1)

        estimate = mi_knn(rng.standard_normal(3000), rng.standard_normal(3000))

        assert abs(estimate.value) < 0.03

    def test_pi_knn_ar1(self):
        """Test the past/future estimate of AR(1) at T = 1."""
        series = gp_generate(KernelSpec(name="exponential", tau=2.0), 5000, seed=2)

        estimate = pi_knn(series, T=1)

        assert estimate.T == 1
        assert estimate.value == pytest.approx(pi_analytic_exponential(2.0).value, abs=0.05)

    def test_duplicates_need_jitter(self):
        """Test tied samples raise instead of producing a degenerate estimate."""
        x = np.repeat(np.arange(30.0), 2)

        with pytest.raises(JitterRequiredError):
            mi_knn(x, x, k=1)

    def test_minimum_samples(self):
        """Test too few samples are rejected."""
        with pytest.raises(InsufficientDataError):
            mi_knn(np.arange(10.0), np.arange(10.0))

    def test_length_mismatch(self):
        """Test x and y must pair up."""
        with pytest.raises(InvalidArgumentError):
            mi_knn(np.arange(60.0), np.arange(61.0))
