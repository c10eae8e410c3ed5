"""Pytest configuration and fixtures."""

import numpy as np
import pytest

from dyncomp.config.loader import load_config_from_string
from dyncomp.config.schema import LorenzParams, RunConfig
from dyncomp.core.timeseries import TimeSeries
from dyncomp.core.transforms import mean_center
from dyncomp.covariance.crosscov import CrossCovSet
from dyncomp.synth.var import var1_crosscov, var1_generate


@pytest.fixture(autouse=True)
def single_thread(monkeypatch):
    """Run every test inline so failures surface with a plain traceback."""
    monkeypatch.setenv("DYNCOMP_THREADS", "1")


@pytest.fixture
def ar1_covs() -> CrossCovSet:
    """Exact 1x1 cross-covariances of a unit-variance AR(1) with coefficient 0.8."""
    return CrossCovSet(0.8 ** np.arange(8))


@pytest.fixture
def var_system() -> tuple[np.ndarray, np.ndarray]:
    """A 4-channel VAR(1) with one slow, one oscillating and two fast directions."""
    rng = np.random.default_rng(7)
    rotation, _ = np.linalg.qr(rng.standard_normal((4, 4)))
    dynamics = np.diag([0.95, -0.7, 0.2, 0.1])
    dynamics[0, 1] = 0.1
    a = rotation @ dynamics @ rotation.T
    return a, np.eye(4)


@pytest.fixture
def var_covs(var_system) -> CrossCovSet:
    """Population cross-covariances of ``var_system`` up to lag 11."""
    a, q = var_system
    return var1_crosscov(a, q, 12)


@pytest.fixture
def var_series(var_system) -> TimeSeries:
    """A centered 5000-step sample of ``var_system``."""
    a, q = var_system
    return mean_center(var1_generate(a, q, 5000, seed=3))


@pytest.fixture
def fast_lorenz() -> LorenzParams:
    """Lorenz parameters with a coarse output grid for quick tests."""
    return LorenzParams(dt=0.005, downsample=5)


@pytest.fixture
def sample_config() -> RunConfig:
    """Sample configuration for testing."""
    yaml_content = """
seed: 4
out_dir: results
synth:
  generator: lorenz-embed
  n_steps: 3000
  ambient_dim: 12
  snr: 2.0
fit:
  method: dca
  d: 3
  T: 4
  n_restarts: 2
eval:
  lags: [0, 5, 10]
  n_folds: 4
sweep:
  snr_values: [0.5, 5.0]
  seeds: [1, 2]
"""
    return load_config_from_string(yaml_content)


@pytest.fixture
def empty_config() -> RunConfig:
    """Empty configuration for testing."""
    return RunConfig()
