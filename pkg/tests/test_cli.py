"""Tests for the command-line interface."""

import json
import logging

import numpy as np
import pandas as pd
import pytest
from scipy.special import zeta

from dyncomp.cli import collect_overrides, main, parse_args
from dyncomp.config.loader import RESOLVED_CONFIG_NAME
from dyncomp.core.io import read_projection_csv, read_series_csv
from dyncomp.core.transforms import mean_center
from dyncomp.covariance.crosscov import estimate_crosscov
from dyncomp.covariance.io import save_crosscov


def run(out, *args: str) -> int:
    return main(["--out-dir", str(out), "--seed", "1", *args])


@pytest.fixture
def embedded(tmp_path):
    """Output directory of a small noisy Lorenz embedding."""
    out = tmp_path / "synth"
    code = run(out, "synth", "lorenz-embed", "--steps", "800", "--dim", "6", "--snr", "5", "--dt", "0.01")
    assert code == 0
    return out


class TestParseArgs:
    """Tests for parse_args function."""

    def test_only_given_flags_are_collected(self):
        """Test unset flags never override config values."""
        parsed = parse_args(["fit", "data.csv", "-d", "2"])

        assert collect_overrides(parsed) == {"command": "fit", "fit": {"input": "data.csv", "d": 2}}

    def test_nested_destinations(self):
        """Test dotted destinations become nested sections."""
        parsed = parse_args(["--seed", "3", "synth", "gp", "--kernel", "squared_exponential", "--tau", "4"])

        overrides = collect_overrides(parsed)

        assert overrides["seed"] == 3
        assert overrides["synth"] == {"generator": "gp", "kernel": {"name": "squared_exponential", "tau": 4.0}}

    def test_command_optional(self):
        """Test the subcommand may be left to a config file."""
        parsed = parse_args(["--seed", "2"])

        assert collect_overrides(parsed) == {"seed": 2}

    def test_version(self, capsys):
        """Test --version prints the program version."""
        with pytest.raises(SystemExit) as info:
            parse_args(["--version"])

        assert info.value.code == 0
        assert "dyncomp 0.1.0" in capsys.readouterr().out


class TestSynthCommand:
    """Tests for the synth subcommand."""

    def test_lorenz_embed_outputs(self, embedded):
        """Test the series, its latent, the embedding and the sidecars are written."""
        series = read_series_csv(embedded / "series.csv")
        latent = read_series_csv(embedded / "latent.csv")
        embedding = read_projection_csv(embedded / "embedding.csv")
        sidecar = json.loads((embedded / "series.json").read_text())
        resolved = json.loads((embedded / RESOLVED_CONFIG_NAME).read_text())

        assert series.data.shape == (800, 6)
        assert latent.channel_names == ("x", "y", "z")
        assert embedding.is_orthonormal
        assert sidecar["snr"] == 5.0
        assert sidecar["generator"] == "lorenz-embed"
        assert resolved["command"] == "synth"
        assert resolved["seed"] == 1
        assert resolved["synth"]["lorenz"]["dt"] == 0.01

    def test_same_seed_same_output(self, embedded, tmp_path):
        """Test reruns with the same seed are byte-identical."""
        again = tmp_path / "again"
        run(again, "synth", "lorenz-embed", "--steps", "800", "--dim", "6", "--snr", "5", "--dt", "0.01")

        assert (again / "series.csv").read_bytes() == (embedded / "series.csv").read_bytes()

    def test_gp(self, tmp_path):
        """Test a scalar Gaussian process is written with its kernel."""
        assert run(tmp_path, "synth", "gp", "--steps", "500", "--tau", "3") == 0

        series = read_series_csv(tmp_path / "series.csv")
        sidecar = json.loads((tmp_path / "series.json").read_text())
        assert series.channel_names == ("y",)
        assert sidecar["kernel"] == {"name": "exponential", "tau": 3.0}


class TestFitAndTransform:
    """Tests for the fit and transform subcommands."""

    def test_fit_then_transform(self, embedded, tmp_path):
        """Test a fitted projection can be applied to the data."""
        fit_dir = tmp_path / "fit"
        assert run(fit_dir, "fit", str(embedded / "series.csv"), "-d", "3", "-T", "2", "--restarts", "2") == 0

        projection = read_projection_csv(fit_dir / "projection.csv")
        report = json.loads((fit_dir / "report.json").read_text())
        assert projection.matrix.shape == (6, 3)
        assert projection.is_orthonormal
        assert report["method"] == "dca"
        assert [r["start"] for r in report["restarts"]] == ["random", "random", "pca", "sfa"]
        assert report["pi_nats"] > 0

        out = tmp_path / "projected"
        assert run(out, "transform", str(embedded / "series.csv"), str(fit_dir / "projection.csv")) == 0
        projected = read_series_csv(out / "projected.csv")
        assert projected.data.shape == (800, 3)

    def test_cca_writes_future_projection(self, embedded, tmp_path):
        """Test two-sided methods write both projections."""
        assert run(tmp_path, "fit", str(embedded / "series.csv"), "-m", "cca", "-d", "2") == 0

        assert (tmp_path / "projection_future.csv").exists()

    def test_missing_input(self, tmp_path, capsys):
        """Test an unreadable input file exits with status 1."""
        assert run(tmp_path, "fit", str(tmp_path / "missing.csv")) == 1
        assert "Error" in capsys.readouterr().err

    def test_invalid_option(self, embedded, tmp_path, capsys):
        """Test an out-of-range option is reported as a configuration error."""
        assert run(tmp_path, "fit", str(embedded / "series.csv"), "--restarts", "0") == 1
        assert "configuration" in capsys.readouterr().err

    def test_unknown_method(self, embedded, tmp_path, capsys):
        """Test an unknown method name lists the available ones."""
        assert run(tmp_path, "fit", str(embedded / "series.csv"), "-m", "ica") == 1
        assert "available" in capsys.readouterr().err

    def test_window_ignored_warns(self, embedded, tmp_path, caplog):
        """Test methods without a window length warn that T is unused."""
        with caplog.at_level(logging.WARNING, logger="dyncomp.cli"):
            assert run(tmp_path, "fit", str(embedded / "series.csv"), "-m", "pca", "-d", "2", "-T", "3") == 0

        assert "does not use T" in caplog.text


class TestPICommand:
    """Tests for the pi subcommand."""

    def test_time_domain_from_csv(self, embedded, tmp_path):
        """Test a Gaussian estimate from a series file."""
        assert run(tmp_path, "pi", str(embedded / "latent.csv"), "-T", "2") == 0

        estimate = json.loads((tmp_path / "estimate.json").read_text())
        assert estimate["method"] == "time_domain"
        assert estimate["T"] == 2
        assert estimate["value"] > 0

    def test_time_domain_from_covariances(self, embedded, tmp_path):
        """Test a stored covariance directory is accepted."""
        covs = estimate_crosscov(read_series_csv(embedded / "latent.csv"), 4)
        directory = save_crosscov(covs, tmp_path / "covs")

        assert run(tmp_path / "out", "pi", str(directory), "-T", "2") == 0

    def test_freq_domain_needs_scalar(self, embedded, tmp_path, capsys):
        """Test the spectral estimate refuses multichannel input."""
        assert run(tmp_path, "pi", str(embedded / "latent.csv"), "-m", "freq-domain") == 1
        assert "single-channel" in capsys.readouterr().err

    def test_freq_domain_scalar(self, tmp_path):
        """Test the spectral estimate of a generated scalar process."""
        run(tmp_path / "gp", "synth", "gp", "--steps", "4000", "--tau", "3")

        assert run(tmp_path, "pi", str(tmp_path / "gp" / "series.csv"), "-m", "freq-domain", "-T", "8") == 0
        estimate = json.loads((tmp_path / "estimate.json").read_text())
        assert estimate["diagnostics"]["mode"] == "series"

    def test_freq_domain_from_autocovariance(self, tmp_path):
        """Test the spectral estimate from a stored single-channel autocovariance."""
        run(tmp_path / "gp", "synth", "gp", "--steps", "4000", "--tau", "3")
        series = mean_center(read_series_csv(tmp_path / "gp" / "series.csv"))
        directory = save_crosscov(estimate_crosscov(series, 16), tmp_path / "covs")

        assert run(tmp_path / "out", "pi", str(directory), "-m", "freq-domain", "-T", "8") == 0
        estimate = json.loads((tmp_path / "out" / "estimate.json").read_text())
        assert estimate["diagnostics"]["mode"] == "autocov"
        assert estimate["value"] > 0

    def test_analytic_exponential(self, tmp_path):
        """Test the closed form for an exponential kernel needs no input file."""
        assert run(tmp_path, "pi", "-m", "analytic-exponential", "--tau", "2") == 0

        estimate = json.loads((tmp_path / "estimate.json").read_text())
        assert estimate["method"] == "analytic"
        assert estimate["value"] == pytest.approx(-0.5 * np.log(-np.expm1(-1.0)), abs=1e-12)

    def test_analytic_squared_exponential(self, tmp_path):
        """Test the large-τ law for a squared-exponential kernel."""
        assert run(tmp_path, "pi", "-m", "analytic-squared-exponential", "--tau", "4") == 0

        estimate = json.loads((tmp_path / "estimate.json").read_text())
        assert estimate["value"] == pytest.approx(zeta(3.0) / 8.0 * 4.0**4, rel=1e-12)

    def test_analytic_needs_tau(self, tmp_path, capsys):
        """Test the analytic methods refuse to run without a time constant."""
        assert run(tmp_path, "pi", "-m", "analytic-exponential") == 1
        assert "--tau" in capsys.readouterr().err

    def test_two_sample_knn(self, embedded, tmp_path):
        """Test the kNN mutual information between two aligned series."""
        latent, series = str(embedded / "latent.csv"), str(embedded / "series.csv")
        code = run(tmp_path, "pi", latent, "-m", "knn-mi", "--other", series)
        assert code == 0

        estimate = json.loads((tmp_path / "estimate.json").read_text())
        assert estimate["method"] == "knn"
        assert estimate["diagnostics"]["n_samples"] == 800
        assert estimate["value"] > 0.5


class TestEvalCommand:
    """Tests for the eval subcommand."""

    def test_results_table(self, embedded, tmp_path):
        """Test per-fold rows for every lag and a JSON summary."""
        code = run(
            tmp_path,
            "eval",
            str(embedded / "series.csv"),
            str(embedded / "latent.csv"),
            "--lags", "0", "2",
            "--folds", "4",
            "--label", "raw",
        )
        assert code == 0

        table = pd.read_csv(tmp_path / "results.csv")
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert list(table.columns) == ["method", "d", "T", "lag", "fold", "r2", "train_r2"]
        assert len(table) == 2 * 4
        assert set(table["method"]) == {"raw"}
        assert [entry["lag"] for entry in summary["lags"]] == [0, 2]
        assert summary["lags"][0]["mean_r2"] > 0.5


class TestSweepCommand:
    """Tests for the sweep subcommand."""

    def test_tiny_sweep(self, tmp_path):
        """Test the sweep table and summary are written."""
        code = run(
            tmp_path,
            "sweep",
            "--snr", "10",
            "--methods", "pca",
            "--seeds", "1",
            "--steps", "300",
            "--dim", "4",
            "-T", "1",
        )
        assert code == 0

        table = pd.read_csv(tmp_path / "sweep.csv", keep_default_na=False)
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert len(table) == 1
        assert table["method"].tolist() == ["pca"]
        assert summary["failed_cells"] == 0
        assert np.isfinite(float(table["r2"].iloc[0]))


class TestConfigFile:
    """Tests for --config handling."""

    def test_file_overrides_flags(self, tmp_path):
        """Test values in the config file take precedence over flags."""
        config = tmp_path / "run.yaml"
        config.write_text("synth:\n  n_steps: 300\n  kernel:\n    tau: 2.0\n")

        assert main(["--config", str(config), "-o", str(tmp_path / "out"), "synth", "gp", "--steps", "900"]) == 0

        series = read_series_csv(tmp_path / "out" / "series.csv")
        resolved = json.loads((tmp_path / "out" / RESOLVED_CONFIG_NAME).read_text())
        assert series.n_steps == 300
        assert resolved["synth"]["kernel"]["tau"] == 2.0

    def test_resolved_config_reproduces_run(self, tmp_path):
        """Test a written resolved config alone reruns the same command."""
        assert run(tmp_path / "first", "synth", "gp", "--steps", "400", "--tau", "2") == 0

        code = main(["--config", str(tmp_path / "first" / RESOLVED_CONFIG_NAME), "-o", str(tmp_path / "second")])

        assert code == 0
        first = (tmp_path / "first" / "series.csv").read_bytes()
        assert (tmp_path / "second" / "series.csv").read_bytes() == first

    def test_flag_command_wins(self, tmp_path):
        """Test a subcommand on the command line replaces the one in the file."""
        config = tmp_path / "run.yaml"
        config.write_text("command: synth\nsynth:\n  generator: gp\n  n_steps: 300\n")

        args = ["pi", "-m", "analytic-exponential", "--tau", "1"]
        assert main(["--config", str(config), "-o", str(tmp_path / "pi"), *args]) == 0

        resolved = json.loads((tmp_path / "pi" / RESOLVED_CONFIG_NAME).read_text())
        assert resolved["command"] == "pi"
        assert (tmp_path / "pi" / "estimate.json").exists()

    def test_no_command(self, tmp_path, capsys):
        """Test running without a subcommand or a config naming one is an error."""
        assert main(["-o", str(tmp_path)]) == 1
        assert "No command given" in capsys.readouterr().err
