"""Frequency-domain predictive information of a 1-D stationary process.

The log power spectrum is expanded in cosines (the cepstrum b_k) and the
information between windows of length T is ½ Σ_{k=1}^{2T-1} k b_k². The
spectrum is either a Welch average over segments of length 2T or the
Fourier transform of a tapered autocovariance sequence, both on a grid
of 4T frequencies.
"""

from __future__ import annotations

import logging
from typing import Literal

import numpy as np
import scipy.signal
from numpy.typing import ArrayLike

from dyncomp.core.timeseries import FloatArray, TimeSeries
from dyncomp.errors import InsufficientDataError, InvalidArgumentError, SpectralFloorError
from dyncomp.predinfo.estimate import PIEstimate, PIMethod

logger = logging.getLogger(__name__)

WindowName = Literal["hann", "none"]

# Relative to the spectral peak. Smooth, band-limited spectra reach double
# precision rounding near the Nyquist frequency; bins below this are lifted.
DEFAULT_SPECTRAL_FLOOR = 1e-16

_SCIPY_WINDOWS: dict[str, str] = {"hann": "hann", "none": "boxcar"}


def _check_window(window_fn: str) -> str:
    if window_fn not in _SCIPY_WINDOWS:
        raise InvalidArgumentError(
            f"Unknown window '{window_fn}'; expected one of {sorted(_SCIPY_WINDOWS)}"
        )
    return _SCIPY_WINDOWS[window_fn]


def grid_size(T: int) -> int:
    """Number of frequency bins used for window length T."""
    return 4 * T


def lag_taper(T: int, window_fn: WindowName = "hann") -> FloatArray:
    """Normalized autocorrelation of the length-2T data window, lags 0..2T-1.

    Tapering an autocovariance by this sequence reproduces the expected
    Welch estimate, and keeps the resulting spectrum nonnegative.
    """
    window = scipy.signal.get_window(_check_window(window_fn), 2 * T)
    acf = np.correlate(window, window, mode="full")[2 * T - 1 :]
    return np.asarray(acf / acf[0], dtype=np.float64)


def cosine_basis(T: int, dtype: type[np.floating] = np.float64) -> np.ndarray:
    """cos(2π m k / M) for m < M = 4T and k < 2T, indexed to stay exact for large m·k."""
    m = grid_size(T)
    phase = np.outer(np.arange(m), np.arange(2 * T)) % m
    two_pi = 2 * np.arccos(np.asarray(-1, dtype=dtype))
    table = np.cos(two_pi * np.arange(m, dtype=dtype) / m)
    return table[phase]


def spectrum_from_autocov(autocov: ArrayLike, T: int, window_fn: WindowName = "hann") -> FloatArray:
    """Spectrum of the tapered sequence f(0..2T-1) on the 4T-point grid.

    The cosine sum runs in extended precision: for smooth kernels the
    spectrum near Nyquist is many orders of magnitude below its peak.
    """
    f = np.asarray(autocov, dtype=np.float64).ravel()
    if len(f) < 2 * T:
        raise InsufficientDataError(f"Autocovariance needs {2 * T} lags for T={T}, got {len(f)}")
    weights = f[: 2 * T].astype(np.longdouble) * lag_taper(T, window_fn).astype(np.longdouble)
    weights[1:] *= 2
    spectrum = cosine_basis(T, np.longdouble) @ weights
    return np.asarray(spectrum, dtype=np.float64)


def spectrum_from_series(series: ArrayLike, T: int, window_fn: WindowName = "hann") -> FloatArray:
    """Two-sided Welch estimate with segments of 2T, 50% overlap, 4T-point FFT."""
    x = np.asarray(series, dtype=np.float64).ravel()
    if len(x) < 2 * T:
        raise InsufficientDataError(f"Series needs at least {2 * T} samples for T={T}, got {len(x)}")
    _, psd = scipy.signal.welch(
        x,
        window=_check_window(window_fn),
        nperseg=2 * T,
        noverlap=T,
        nfft=grid_size(T),
        detrend=False,
        return_onesided=False,
        scaling="density",
    )
    return np.asarray(psd, dtype=np.float64)


def apply_spectral_floor(
    spectrum: FloatArray, spectral_floor: float | None = DEFAULT_SPECTRAL_FLOOR
) -> tuple[FloatArray, int]:
    """Lift bins below ``spectral_floor`` × peak; with None, refuse nonpositive bins.

    Returns:
        Tuple of (floored spectrum, number of lifted bins)
    """
    peak = float(np.max(spectrum))
    nonpositive = int(np.count_nonzero(spectrum <= 0))
    if peak <= 0 or (spectral_floor is None and nonpositive):
        raise SpectralFloorError(
            f"Spectral estimate is nonpositive at {nonpositive} of {len(spectrum)} frequencies; "
            "add a white-noise floor to the input"
        )
    if spectral_floor is None:
        return spectrum, 0
    level = spectral_floor * peak
    lifted = int(np.count_nonzero(spectrum < level))
    if nonpositive:
        logger.warning(
            "Spectral estimate is nonpositive at %d frequencies; clamped to %.3g", nonpositive, level
        )
    return np.maximum(spectrum, level), lifted


def cepstrum(spectrum: FloatArray, T: int) -> FloatArray:
    """Cosine coefficients b_0..b_{2T-1} of log S."""
    return np.asarray(np.fft.ifft(np.log(spectrum)).real[: 2 * T], dtype=np.float64)


def cepstral_pi(coefficients: FloatArray) -> float:
    """½ Σ_k k b_k² over the coefficients after b_0."""
    k = np.arange(len(coefficients))
    return float(0.5 * np.sum(k[1:] * coefficients[1:] ** 2))


def pi_freq_domain(
    series_1d: ArrayLike | TimeSeries | None,
    T: int,
    window_fn: WindowName = "hann",
    *,
    autocov: ArrayLike | None = None,
    spectral_floor: float | None = DEFAULT_SPECTRAL_FLOOR,
) -> PIEstimate:
    """Predictive information of a scalar process from its spectrum.

    Args:
        series_1d: Scalar series (Welch spectrum); pass None to use ``autocov``
        T: Window length
        window_fn: Data window, "hann" or "none"
        autocov: Autocovariance f(0), f(1), ... with at least 2T entries
        spectral_floor: Relative floor for the log; None raises on nonpositive bins

    Returns:
        PIEstimate whose diagnostics hold the cepstrum coefficients
    """
    if T < 1:
        raise InvalidArgumentError(f"T must be >= 1, got {T}")
    if (series_1d is None) == (autocov is None):
        raise InvalidArgumentError("Pass exactly one of series_1d and autocov")

    if autocov is not None:
        mode = "autocov"
        spectrum = spectrum_from_autocov(autocov, T, window_fn)
    else:
        mode = "series"
        if isinstance(series_1d, TimeSeries):
            if series_1d.n_channels != 1:
                raise InvalidArgumentError(
                    f"Frequency-domain estimate needs a scalar series, got {series_1d.n_channels} channels"
                )
            series_1d = series_1d.data[:, 0]
        spectrum = spectrum_from_series(series_1d, T, window_fn)

    spectrum, lifted = apply_spectral_floor(spectrum, spectral_floor)
    coefficients = cepstrum(spectrum, T)
    return PIEstimate(
        value=cepstral_pi(coefficients),
        method=PIMethod.FREQ_DOMAIN,
        T=T,
        diagnostics={
            "mode": mode,
            "window": window_fn,
            "cepstrum": coefficients.tolist(),
            "floored_bins": lifted,
        },
    )


def cepstral_pi_gradient(
    autocov: FloatArray, T: int, window_fn: WindowName = "hann"
) -> tuple[float, FloatArray]:
    """Value and gradient with respect to f(0..2T-1) of the autocov-mode estimate.

    Runs in double precision; floored bins contribute no gradient.
    """
    basis = cosine_basis(T)
    weights = lag_taper(T, window_fn)
    weights[1:] *= 2
    spectrum = basis @ (autocov[: 2 * T] * weights)
    floored, _ = apply_spectral_floor(spectrum)
    coefficients = cepstrum(floored, T)
    k = np.arange(2 * T)
    d_log = basis @ (k * coefficients) / grid_size(T)
    d_spectrum = np.where(spectrum < floored, 0.0, d_log) / floored
    return cepstral_pi(coefficients), (basis.T @ d_spectrum) * weights
