"""DCA objective and optimizers."""

from dyncomp.config.schema import FitOptions
from dyncomp.optim.fit import fit_dca, fit_dca_deflation
from dyncomp.optim.loss import dca_grad, dca_loss, freq_deflation_objective, orthonormality_penalty
from dyncomp.optim.report import FitReport, RestartRecord

__all__ = [
    "FitOptions",
    "FitReport",
    "RestartRecord",
    "dca_grad",
    "dca_loss",
    "fit_dca",
    "fit_dca_deflation",
    "freq_deflation_objective",
    "orthonormality_penalty",
]
