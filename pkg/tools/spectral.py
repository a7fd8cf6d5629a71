"""Fourier-spectral differentiation of periodic nodal data."""

import numpy as np


def rfft_wavenumbers(count: int, length: float) -> np.ndarray:
    """Angular wave numbers of the ``rfft`` half-spectrum, Nyquist included."""
    return (2.0 * np.pi / length) * np.arange(count // 2 + 1, dtype=float)


def spectral_derivative(values: np.ndarray, length: float, axis: int = -1) -> np.ndarray:
    """Derivative of the trigonometric interpolant of ``values`` at the nodes.

    The Nyquist mode of an even-length line is dropped, which keeps the operator
    real, skew-symmetric and mean-free.
    """
    values = np.asarray(values, dtype=float)
    count = values.shape[axis]
    ik = 1j * rfft_wavenumbers(count, length)
    if count % 2 == 0:
        ik[-1] = 0.0
    shape = [1] * values.ndim
    shape[axis] = ik.size
    spectrum = np.fft.rfft(values, axis=axis) * ik.reshape(shape)
    return np.fft.irfft(spectrum, n=count, axis=axis)
