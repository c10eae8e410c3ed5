"""Core data carriers: sampled time series and linear projections."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dyncomp.errors import InvalidArgumentError

FloatArray = NDArray[np.float64]

ORTHONORMAL_TOL = 1e-10


def _frozen_array(values: ArrayLike, ndim: int) -> FloatArray:
    """Copy ``values`` into a read-only float64 array with ``ndim`` dimensions."""
    array = np.array(values, dtype=np.float64)
    if ndim == 2 and array.ndim == 1:
        array = array[:, np.newaxis]
    if array.ndim != ndim:
        raise InvalidArgumentError(f"Expected a {ndim}-D array, got shape {array.shape}")
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class TimeSeries:
    """A uniformly sampled multivariate time series.

    Attributes:
        data: Samples, shape (T_tot, n); rows are time steps, columns channels
        dt: Seconds per step (informational)
        channel_names: Optional channel labels, one per column
    """

    data: FloatArray
    dt: float = 1.0
    channel_names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        data = _frozen_array(self.data, 2)
        if data.shape[0] < 2 or data.shape[1] < 1:
            raise InvalidArgumentError(
                f"A time series needs at least 2 steps and 1 channel, got shape {data.shape}"
            )
        if not np.all(np.isfinite(data)):
            bad_t, bad_c = np.argwhere(~np.isfinite(data))[0]
            raise InvalidArgumentError(
                f"Non-finite sample at time index {bad_t}, channel {bad_c}"
            )
        if not self.dt > 0:
            raise InvalidArgumentError(f"dt must be positive, got {self.dt}")
        object.__setattr__(self, "data", data)
        if self.channel_names is not None:
            names = tuple(str(name) for name in self.channel_names)
            if len(names) != data.shape[1]:
                raise InvalidArgumentError(
                    f"Got {len(names)} channel names for {data.shape[1]} channels"
                )
            object.__setattr__(self, "channel_names", names)

    @property
    def n_steps(self) -> int:
        """Number of time steps (T_tot)."""
        return int(self.data.shape[0])

    @property
    def n_channels(self) -> int:
        """Number of channels (n)."""
        return int(self.data.shape[1])

    def channel_label(self, index: int) -> str:
        """Human-readable label for a channel."""
        if self.channel_names is not None:
            return self.channel_names[index]
        return f"channel {index}"

    def with_data(self, data: ArrayLike, **changes: Any) -> TimeSeries:
        """Copy of this series with new samples (and optionally other fields)."""
        new_data = _frozen_array(data, 2)
        if "channel_names" not in changes and new_data.shape[1] != self.n_channels:
            changes["channel_names"] = None
        return replace(self, data=new_data, **changes)


@dataclass(frozen=True)
class Projection:
    """A linear map from n channels to d latent components.

    Attributes:
        matrix: Projection matrix V, shape (n, d)
        is_orthonormal: Whether VᵀV = I_d
    """

    matrix: FloatArray
    is_orthonormal: bool = False
    _gram: FloatArray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        matrix = _frozen_array(self.matrix, 2)
        n, d = matrix.shape
        if not 1 <= d <= n:
            raise InvalidArgumentError(f"Projection must satisfy 1 <= d <= n, got n={n}, d={d}")
        if not np.all(np.isfinite(matrix)):
            raise InvalidArgumentError("Projection matrix contains non-finite entries")
        if np.linalg.matrix_rank(matrix) < d:
            raise InvalidArgumentError("Projection matrix must have full column rank")
        gram = matrix.T @ matrix
        if self.is_orthonormal and np.max(np.abs(gram - np.eye(d))) > ORTHONORMAL_TOL:
            raise InvalidArgumentError("Projection flagged orthonormal but VᵀV != I")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "_gram", gram)

    @property
    def n(self) -> int:
        """Number of input channels."""
        return int(self.matrix.shape[0])

    @property
    def d(self) -> int:
        """Number of latent components."""
        return int(self.matrix.shape[1])

    @property
    def orthonormality_residual(self) -> float:
        """Squared Frobenius norm of VᵀV - I."""
        return float(np.sum((self._gram - np.eye(self.d)) ** 2))

    @classmethod
    def orthonormalized(cls, matrix: ArrayLike) -> Projection:
        """Orthonormal basis for the column span of ``matrix`` (QR, diag(R) > 0)."""
        q, r = np.linalg.qr(np.asarray(matrix, dtype=np.float64))
        signs = np.sign(np.diag(r))
        signs[signs == 0] = 1.0
        return cls(q * signs, is_orthonormal=True)

    def orthonormalize(self) -> Projection:
        """Orthonormal basis spanning the same subspace."""
        if self.is_orthonormal:
            return self
        return Projection.orthonormalized(self.matrix)


def as_matrix(proj: Projection | ArrayLike) -> FloatArray:
    """Projection matrix of a Projection or a raw array."""
    if isinstance(proj, Projection):
        return proj.matrix
    matrix = np.asarray(proj, dtype=np.float64)
    if matrix.ndim == 1:
        matrix = matrix[:, np.newaxis]
    return matrix
