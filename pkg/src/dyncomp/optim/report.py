"""Fit results and per-restart diagnostics."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any

from dyncomp.core.timeseries import Projection


@dataclass
class RestartRecord:
    """Outcome of one optimizer run.

    Attributes:
        index: Position in the report's restart list
        component: Deflation step (0 for joint fits)
        seed: Seed of the random initialization (None for baseline starts)
        initial_loss: Loss at the orthonormal starting point
        final_loss: Loss at termination (NaN when the run failed)
        penalty_residual: ‖VᵀV - I‖_F² before the final orthonormalization
        grad_norm: Frobenius norm of the gradient at termination
        iterations: Quasi-Newton iterations taken
        converged: Whether the optimizer reported convergence
        message: Optimizer termination message or the failure reason
        loss_trace: Loss after every accepted iteration, starting point included
        pi_trace: Predictive information after every accepted iteration
        start: Initialization, "random" or the baseline subspace it began from
    """

    index: int
    component: int
    seed: int | None
    initial_loss: float
    final_loss: float
    penalty_residual: float
    grad_norm: float
    iterations: int
    converged: bool
    message: str = ""
    loss_trace: list[float] = field(default_factory=list)
    pi_trace: list[float] = field(default_factory=list)
    start: str = "random"

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation."""
        return asdict(self)


@dataclass
class FitReport:
    """Fitted projection with optimizer diagnostics.

    Attributes:
        projection: Orthonormal basis of the fitted subspace
        pi_nats: Time-domain predictive information of the projection, or None
            for methods fitted without a window length
        method: Method that produced the projection
        T: Window length used (0 when not applicable)
        restarts: Optimizer runs, in execution order
        chosen_restart: Index of the selected run (-1 without restarts)
        component_choices: Selected run per deflation step
        future_projection: Future-side projection of two-sided methods (CCA)
    """

    projection: Projection
    pi_nats: float | None
    method: str
    T: int = 0
    restarts: list[RestartRecord] = field(default_factory=list)
    chosen_restart: int = -1
    component_choices: list[int] = field(default_factory=list)
    future_projection: Projection | None = None

    @property
    def d(self) -> int:
        """Dimensionality of the fitted subspace."""
        return self.projection.d

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation."""
        return {
            "method": self.method,
            "T": self.T,
            "n": self.projection.n,
            "d": self.d,
            "pi_nats": self.pi_nats,
            "chosen_restart": self.chosen_restart,
            "component_choices": self.component_choices,
            "restarts": [record.to_dict() for record in self.restarts],
            "projection": self.projection.matrix.tolist(),
            "future_projection": (
                None if self.future_projection is None else self.future_projection.matrix.tolist()
            ),
        }
