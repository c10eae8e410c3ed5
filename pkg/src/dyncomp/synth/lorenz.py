"""Lorenz-63 trajectories integrated with classical fourth-order Runge-Kutta."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike

from dyncomp.config.schema import LorenzParams
from dyncomp.core.timeseries import FloatArray, TimeSeries
from dyncomp.core.transforms import mean_center
from dyncomp.errors import DivergenceError, InvalidArgumentError

TRANSIENT_STEPS = 1000
DIVERGENCE_BOUND = 1e6
INITIAL_STATE = (1.0, 1.0, 1.0)
CHANNEL_NAMES = ("x", "y", "z")


def _rk4_step(
    x: float, y: float, z: float, h: float, sigma: float, rho: float, beta: float
) -> tuple[float, float, float]:
    def fx(x: float, y: float, z: float) -> float:
        return sigma * (y - x)

    def fy(x: float, y: float, z: float) -> float:
        return x * (rho - z) - y

    def fz(x: float, y: float, z: float) -> float:
        return x * y - beta * z

    k1x, k1y, k1z = (h * f(x, y, z) for f in (fx, fy, fz))
    xs, ys, zs = x + 0.5 * k1x, y + 0.5 * k1y, z + 0.5 * k1z
    k2x, k2y, k2z = (h * f(xs, ys, zs) for f in (fx, fy, fz))
    xs, ys, zs = x + 0.5 * k2x, y + 0.5 * k2y, z + 0.5 * k2z
    k3x, k3y, k3z = (h * f(xs, ys, zs) for f in (fx, fy, fz))
    xs, ys, zs = x + k3x, y + k3y, z + k3z
    k4x, k4y, k4z = (h * f(xs, ys, zs) for f in (fx, fy, fz))
    return (
        x + (k1x + 2 * k2x + 2 * k3x + k4x) / 6,
        y + (k1y + 2 * k2y + 2 * k3y + k4y) / 6,
        z + (k1z + 2 * k2z + 2 * k3z + k4z) / 6,
    )


def integrate_lorenz(state0: ArrayLike, params: LorenzParams, n_steps: int) -> FloatArray:
    """Raw trajectory sampled every ``params.downsample`` RK4 steps.

    Args:
        state0: Initial (x, y, z); returned as the first row
        params: System and integration parameters
        n_steps: Number of rows to return

    Raises:
        DivergenceError: If the state norm exceeds 1e6
    """
    if n_steps < 1:
        raise InvalidArgumentError(f"n_steps must be >= 1, got {n_steps}")
    x, y, z = (float(v) for v in np.asarray(state0, dtype=np.float64).ravel()[:3])
    sigma, rho, beta, h = params.sigma, params.rho, params.beta, params.dt
    out = np.empty((n_steps, 3))
    out[0] = (x, y, z)
    for row in range(1, n_steps):
        for _ in range(params.downsample):
            x, y, z = _rk4_step(x, y, z, h, sigma, rho, beta)
        if not x * x + y * y + z * z < DIVERGENCE_BOUND**2:
            raise DivergenceError(
                f"Lorenz integration diverged after {row * params.downsample} steps "
                f"(dt={h}); reduce dt"
            )
        out[row] = (x, y, z)
    return out


def lorenz_generate(params: LorenzParams, n_steps: int, seed: int = 0) -> TimeSeries:
    """Mean-centered Lorenz trajectory on the attractor.

    The initial state is (1, 1, 1) plus a standard normal perturbation drawn
    from ``seed``; the first 1000 downsampled steps are discarded.
    """
    if n_steps < 2:
        raise InvalidArgumentError(f"A trajectory needs at least 2 steps, got {n_steps}")
    rng = np.random.default_rng(seed)
    state0 = np.asarray(INITIAL_STATE) + rng.standard_normal(3)
    trajectory = integrate_lorenz(state0, params, TRANSIENT_STEPS + n_steps)[TRANSIENT_STEPS:]
    series = TimeSeries(
        trajectory,
        dt=params.dt * params.downsample,
        channel_names=CHANNEL_NAMES,
    )
    return mean_center(series)
