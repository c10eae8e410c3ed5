"""Pydantic models for every parameter record and the resolved run configuration."""

from __future__ import annotations

import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

FitVariant = Literal["joint_time_domain", "deflation_time_domain", "deflation_freq_domain"]
KernelName = Literal["exponential", "squared_exponential"]
EvalTarget = Literal["auxiliary", "self_forecast"]
GeneratorName = Literal["lorenz", "lorenz-embed", "gp"]
PIMethodName = Literal[
    "time-domain",
    "freq-domain",
    "knn",
    "knn-mi",
    "analytic-exponential",
    "analytic-squared-exponential",
]
WindowChoice = Literal["hann", "none"]


class _Params(BaseModel):
    """Immutable parameter record; unknown keys are rejected."""

    model_config = ConfigDict(frozen=True, extra="forbid")


class FitOptions(_Params):
    """Options for the DCA optimizer."""

    T: int = Field(default=5, ge=1, description="Past/future window length in steps")
    d: int = Field(default=3, ge=1, description="Target dimensionality")
    n_restarts: int = Field(default=5, ge=1, description="Random initializations")
    baseline_starts: bool = Field(
        default=True, description="Also start joint fits from the PCA and SFA subspaces"
    )
    penalty_lambda: float = Field(default=10.0, gt=0, description="Orthonormality penalty weight λ")
    max_iter: int = Field(default=500, ge=1, description="Iteration budget per restart")
    grad_tol: float = Field(default=1e-6, gt=0, description="Projected-gradient termination tolerance")
    seed: int = Field(default=0, ge=0, description="Seed for the restart initializations")
    method: FitVariant = Field(default="joint_time_domain", description="Objective and search strategy")
    window_fn: WindowChoice = Field(
        default="hann", description="Lag taper for the frequency-domain deflation objective"
    )
    regularization_floor: float = Field(
        default=1e-6, gt=0, description="Minimum eigenvalue of Σ_2T before fitting"
    )


class EvalSpec(_Params):
    """Cross-validated lagged linear regression protocol."""

    n_folds: int = Field(default=5, description="Contiguous time-block folds")
    history_bins: int = Field(default=3, ge=1, description="Feature steps stacked per sample")
    lag_bins: int = Field(default=0, ge=0, description="Offset of the target after the last feature step")
    ridge_alpha: float = Field(default=0.0, ge=0, description="Ridge penalty; 0 is ordinary least squares")
    target: EvalTarget = Field(default="auxiliary", description="Decode an external variable or forecast the state")
    segment_length: int | None = Field(
        default=None, ge=1, description="Trial length; windows never cross segment boundaries"
    )

    @field_validator("n_folds")
    @classmethod
    def check_folds(cls, v: int) -> int:
        """Cross-validation needs a training fold next to every test fold."""
        if v < 2:
            raise ValueError(f"n_folds must be at least 2, got {v}")
        return v


class LorenzParams(_Params):
    """Lorenz-63 system and integration settings."""

    sigma: float = Field(default=10.0, description="σ")
    beta: float = Field(default=8.0 / 3.0, description="β")
    rho: float = Field(default=28.0, description="ρ")
    dt: float = Field(default=5e-3, gt=0, description="RK4 integration step")
    downsample: int = Field(default=5, ge=1, description="Keep every downsample-th integration step")


class NoiseSpec(_Params):
    """Spatially structured additive noise for embeddings.

    Eigenvalues are λ_j = variance · exp(-2j / d_noise).
    """

    variance: float = Field(default=1.0, gt=0, description="Top noise eigenvalue σ² (replaced when an SNR is given)")
    d_noise: float = Field(default=7.0, gt=0, description="Effective noise dimensionality")
    seed: int = Field(default=0, ge=0, description="Seed for the noise eigenbasis and samples")


class KernelSpec(_Params):
    """Unit-variance stationary Gaussian-process kernel."""

    name: KernelName = Field(default="exponential", description="exp(-|Δt|/τ) or exp(-Δt²/τ²)")
    tau: float = Field(default=5.0, gt=0, description="Time constant τ in steps")


class SweepConfig(_Params):
    """Reconstruction-versus-SNR sweep over noisy Lorenz embeddings."""

    snr_values: list[float] = Field(
        default_factory=lambda: [0.1, 0.316, 1.0, 3.16, 10.0], description="SNR grid"
    )
    methods: list[str] = Field(default_factory=lambda: ["dca", "pca"], description="Registered fit methods")
    seeds: list[int] = Field(default_factory=lambda: list(range(1, 11)), description="One latent per seed")
    n_steps: int = Field(default=10_000, ge=100, description="Latent samples per seed")
    ambient_dim: int = Field(default=30, ge=3, description="Embedding dimension")
    d: int = Field(default=3, ge=1, description="Fitted dimensionality")
    T: int = Field(default=4, ge=1, description="DCA window length")
    n_restarts: int = Field(default=5, ge=1, description="DCA restarts per cell")
    max_iter: int = Field(default=500, ge=1, description="DCA iteration budget per restart")
    d_noise: float = Field(default=7.0, gt=0, description="Effective noise dimensionality")
    lorenz: LorenzParams = Field(default_factory=LorenzParams)

    @field_validator("snr_values")
    @classmethod
    def check_snr(cls, v: list[float]) -> list[float]:
        """SNRs must be positive; the list must not be empty."""
        if not v:
            raise ValueError("snr_values must not be empty")
        if any(not (s > 0) for s in v):
            raise ValueError(f"SNR values must be positive, got {v}")
        return v

    @field_validator("methods", "seeds")
    @classmethod
    def check_nonempty(cls, v: list[str] | list[int]) -> list[str] | list[int]:
        """Sweeps need at least one method and one seed."""
        if not v:
            raise ValueError("list must not be empty")
        return v


class SynthSection(_Params):
    """Parameters of ``dyncomp synth``."""

    generator: GeneratorName = "lorenz"
    n_steps: int = Field(default=20_000, ge=2, description="Output samples")
    lorenz: LorenzParams = Field(default_factory=LorenzParams)
    ambient_dim: int = Field(default=30, ge=1, description="Embedding dimension for lorenz-embed")
    snr: float = Field(default=1.0, gt=0, description="Dynamics-to-noise top-PC variance ratio")
    d_noise: float = Field(default=7.0, gt=0)
    kernel: KernelSpec = Field(default_factory=KernelSpec)

    @field_validator("snr", mode="before")
    @classmethod
    def parse_snr(cls, v: float | None) -> float:
        """Infinite SNR (noiseless) is written to JSON as null."""
        return math.inf if v is None else v


class FitSection(_Params):
    """Parameters of ``dyncomp fit``; mirrors FitOptions except the seed."""

    input: str | None = None
    method: str = Field(default="dca", description="Registered fit method (abbreviations allowed)")
    d: int = Field(default=3, ge=1)
    T: int = Field(default=5, ge=1)
    n_restarts: int = Field(default=5, ge=1)
    baseline_starts: bool = True
    penalty_lambda: float = Field(default=10.0, gt=0)
    max_iter: int = Field(default=500, ge=1)
    grad_tol: float = Field(default=1e-6, gt=0)
    window_fn: WindowChoice = "hann"
    lag: int = Field(default=1, ge=1, description="Lag of C_1 for SFA/CCA (stride of the covariances)")
    chunk: int | None = Field(default=None, ge=1, description="Segment length of trial data")

    def to_fit_options(self, seed: int) -> FitOptions:
        """Optimizer options for this section and the run's seed."""
        return FitOptions(
            T=self.T,
            d=self.d,
            n_restarts=self.n_restarts,
            baseline_starts=self.baseline_starts,
            penalty_lambda=self.penalty_lambda,
            max_iter=self.max_iter,
            grad_tol=self.grad_tol,
            seed=seed,
            window_fn=self.window_fn,
        )


class TransformSection(_Params):
    """Parameters of ``dyncomp transform``."""

    input: str | None = None
    projection: str | None = None


class PISection(_Params):
    """Parameters of ``dyncomp pi``."""

    input: str | None = Field(default=None, description="Series CSV or cross-covariance directory")
    method: PIMethodName = "time-domain"
    T: int = Field(default=1, ge=1)
    window_fn: WindowChoice = "hann"
    k: int = Field(default=3, ge=1, description="Neighbor count for the kNN estimator")
    chunk: int | None = Field(default=None, ge=1)
    other: str | None = Field(default=None, description="Second series CSV for knn-mi")
    tau: float | None = Field(default=None, gt=0, description="Kernel time constant for the analytic methods")


class EvalSection(_Params):
    """Parameters of ``dyncomp eval``; one EvalSpec per requested lag."""

    features: str | None = None
    targets: str | None = None
    label: str = Field(default="features", description="Method column of the results table")
    T: int = Field(default=0, ge=0, description="Window length recorded in the results table")
    lags: list[int] = Field(default_factory=lambda: [0], description="Target lags in steps")
    n_folds: int = 5
    history_bins: int = Field(default=3, ge=1)
    ridge_alpha: float = Field(default=0.0, ge=0)
    target: EvalTarget = "auxiliary"
    segment_length: int | None = Field(default=None, ge=1)

    @field_validator("lags")
    @classmethod
    def check_lags(cls, v: list[int]) -> list[int]:
        """Lags are nonnegative and at least one is given."""
        if not v or any(lag < 0 for lag in v):
            raise ValueError(f"lags must be a nonempty list of nonnegative integers, got {v}")
        return v

    def to_eval_spec(self, lag: int) -> EvalSpec:
        """EvalSpec for one lag."""
        return EvalSpec(
            n_folds=self.n_folds,
            history_bins=self.history_bins,
            lag_bins=lag,
            ridge_alpha=self.ridge_alpha,
            target=self.target,
            segment_length=self.segment_length,
        )


class RunConfig(_Params):
    """Resolved configuration of one CLI invocation."""

    command: str | None = Field(default=None, description="Subcommand that produced this config")
    seed: int = Field(default=0, ge=0, description="Global seed")
    out_dir: str = Field(default=".", description="Output directory")
    synth: SynthSection = Field(default_factory=SynthSection)
    fit: FitSection = Field(default_factory=FitSection)
    transform: TransformSection = Field(default_factory=TransformSection)
    pi: PISection = Field(default_factory=PISection)
    eval: EvalSection = Field(default_factory=EvalSection)
    sweep: SweepConfig = Field(default_factory=SweepConfig)
