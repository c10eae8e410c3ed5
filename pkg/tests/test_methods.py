"""Tests for the methods module."""

import numpy as np
import pytest

from dyncomp.config.schema import FitOptions
from dyncomp.errors import InvalidArgumentError
from dyncomp.methods import MethodRegistry, methods
from dyncomp.optim.report import FitReport


def dummy_fit(covs, opts, lag):
    raise NotImplementedError


class TestMethodRegistry:
    """Tests for MethodRegistry class."""

    def test_register_and_get(self):
        """Test registering and getting a method."""
        registry = MethodRegistry()

        @registry.register("test-method")
        def test_method(covs, opts, lag):
            pass

        assert registry.get("test-method") is not None
        assert registry.get("test-method").func is test_method

    def test_abbreviation_matching(self):
        """Test method abbreviation matching."""
        registry = MethodRegistry()
        registry.register("slow-features")(dummy_fit)
        registry.register("slow-components")(dummy_fit)

        assert registry.get("s-f").name == "slow-features"
        assert registry.get("s-c").name == "slow-components"
        assert registry.get("slow-features").name == "slow-features"

    def test_ambiguous_abbreviation(self):
        """Test that ambiguous abbreviations raise error."""
        registry = MethodRegistry()
        registry.register("copy-file")(dummy_fit)
        registry.register("copy-folder")(dummy_fit)

        with pytest.raises(InvalidArgumentError, match="Ambiguous"):
            registry.get("c-f")

    def test_unknown(self):
        """Test unknown names give None from get and an error from resolve."""
        registry = MethodRegistry()

        assert registry.get("pca") is None
        with pytest.raises(InvalidArgumentError, match="Unknown method"):
            registry.resolve("pca")

    def test_list_methods(self):
        """Test listing registered methods."""
        registry = MethodRegistry()
        registry.register("b-method")(dummy_fit)
        registry.register("a-method")(dummy_fit)

        assert registry.list_methods() == ["a-method", "b-method"]


class TestBuiltinMethods:
    """Tests for the methods in the global registry."""

    def test_all_registered(self):
        """Test every fitting method is available."""
        assert methods.list_methods() == ["cca", "dca", "dca-deflate", "dca-fft-deflate", "pca", "sfa"]

    def test_abbreviations(self):
        """Test the deflation variants are reachable by abbreviation."""
        assert methods.resolve("dca-d").name == "dca-deflate"
        assert methods.resolve("dca-f").name == "dca-fft-deflate"
        with pytest.raises(InvalidArgumentError, match="Ambiguous"):
            methods.resolve("d")

    def test_required_lags(self):
        """Test DCA needs 2T lags and SFA at least lag + 1."""
        opts = FitOptions(T=3)

        assert methods.resolve("dca").required_lags(opts) == 6
        assert methods.resolve("sfa").required_lags(FitOptions(T=1), lag=4) == 5

    def test_pca_report(self, var_covs):
        """Test PCA reports a window-length information value."""
        report = methods.fit("pca", var_covs, FitOptions(T=2, d=2))

        assert isinstance(report, FitReport)
        assert report.method == "pca"
        assert report.pi_nats is not None and report.pi_nats > 0
        assert report.restarts == []

    def test_cca_has_future_projection(self, var_covs):
        """Test CCA returns both projections."""
        report = methods.fit("cca", var_covs, FitOptions(T=1, d=2))

        assert report.future_projection is not None
        assert report.future_projection.d == 2

    def test_sfa_lag_beyond_covariances(self, var_covs):
        """Test the SFA lag must be covered by the covariances."""
        with pytest.raises(InvalidArgumentError, match="lag=12"):
            methods.fit("sfa", var_covs, FitOptions(T=1, d=1), lag=12)

    def test_dca_needs_lags(self, var_covs):
        """Test the registry checks the lag count before fitting."""
        with pytest.raises(InvalidArgumentError, match="needs 14 lags"):
            methods.fit("dca", var_covs, FitOptions(T=7, d=1))

    def test_method_variants_agree_on_first_direction(self, var_covs):
        """Test joint and deflation fits find the same best direction."""
        opts = FitOptions(T=2, d=1, n_restarts=3)

        joint = methods.fit("dca", var_covs, opts).projection.matrix[:, 0]
        greedy = methods.fit("dca-deflate", var_covs, opts).projection.matrix[:, 0]

        assert abs(float(np.dot(joint, greedy))) > 0.999
