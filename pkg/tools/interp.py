"""Constant-shift 1D advection kernels applied to batches of periodic lines.

Both kernels compute ``out_i = line(z_i - shift)`` on a uniform periodic grid:

    - cubic-spline semi-Lagrangian: periodic B-spline interpolation of the line,
      evaluated at the feet of the characteristics
    - Fourier spectral: multiply the DFT by exp(-i shift beta)

The shift may differ from line to line (the shear stages of a rotation need
that) but is constant along each line.
"""

from abc import ABC, abstractmethod
from functools import lru_cache
from typing import Union

import numpy as np
from pydantic import BaseModel, ConfigDict

from shared.errors import KernelError
from .spectral import rfft_wavenumbers

SPLINE_MIN_POINTS = 4
ShiftLike = Union[float, np.ndarray]


class SplineCoefficients(BaseModel):
    """Periodic cubic B-spline expansion sum_j e_j C(z - z_j) of a sampled line."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    e: np.ndarray
    dz: float
    z0: float = 0.0

    @property
    def period(self) -> float:
        return self.e.size * self.dz


class PeriodicSplineSolver:
    """Solver for the cyclic system (e_{i-1} + 4 e_i + e_{i+1}) / 6 = s_i.

    Thomas factors of the tridiagonal part and the Sherman-Morrison correction
    vector are computed once per line length; ``solve`` works on the leading
    axis and vectorizes over all trailing axes.
    """

    off = 1.0 / 6.0
    diag = 4.0 / 6.0

    def __init__(self, n: int):
        if n < SPLINE_MIN_POINTS:
            raise KernelError(f"periodic cubic spline needs at least {SPLINE_MIN_POINTS} points, got {n}")
        self.n = n

        # Cyclic -> tridiagonal + rank one, as in the classic cyclic Thomas algorithm
        self._gamma = -self.diag
        bb = np.full(n, self.diag)
        bb[0] -= self._gamma
        bb[-1] -= self.off * self.off / self._gamma

        self._inv_denom = np.empty(n)
        self._cp = np.empty(n)
        self._inv_denom[0] = 1.0 / bb[0]
        self._cp[0] = self.off * self._inv_denom[0]
        for i in range(1, n):
            self._inv_denom[i] = 1.0 / (bb[i] - self.off * self._cp[i - 1])
            self._cp[i] = self.off * self._inv_denom[i]

        u = np.zeros(n)
        u[0] = self._gamma
        u[-1] = self.off
        self._z = self._tridiagonal(u)
        self._z_denom = 1.0 + self._z[0] + self.off * self._z[-1] / self._gamma

    def _tridiagonal(self, rhs: np.ndarray) -> np.ndarray:
        out = np.empty_like(rhs, dtype=float)
        out[0] = rhs[0] * self._inv_denom[0]
        for i in range(1, self.n):
            out[i] = (rhs[i] - self.off * out[i - 1]) * self._inv_denom[i]
        for i in range(self.n - 2, -1, -1):
            out[i] -= self._cp[i] * out[i + 1]
        return out

    def solve(self, samples: np.ndarray) -> np.ndarray:
        """Spline coefficients of every line stored along axis 0."""
        samples = np.asarray(samples, dtype=float)
        if samples.shape[0] != self.n:
            raise KernelError(f"solver built for {self.n} points, got {samples.shape[0]}")
        x = self._tridiagonal(samples)
        fact = (x[0] + self.off * x[-1] / self._gamma) / self._z_denom
        z = self._z.reshape((self.n,) + (1,) * (samples.ndim - 1))
        return x - fact * z


@lru_cache(maxsize=32)
def spline_solver(n: int) -> PeriodicSplineSolver:
    """Shared solver per line length (factors are read-only)."""
    return PeriodicSplineSolver(n)


def bspline_weights(t: np.ndarray) -> tuple:
    """Weights of e_{l-1}, e_l, e_{l+1}, e_{l+2} at z_l + t dz, 0 <= t < 1."""
    t2 = t * t
    t3 = t2 * t
    one_minus = 1.0 - t
    return (
        one_minus * one_minus * one_minus / 6.0,
        (3.0 * t3 - 6.0 * t2 + 4.0) / 6.0,
        (-3.0 * t3 + 3.0 * t2 + 3.0 * t + 1.0) / 6.0,
        t3 / 6.0,
    )


def spline_coefficients_periodic(samples: np.ndarray, dz: float, z0: float = 0.0) -> SplineCoefficients:
    """Periodic cubic-spline coefficients of one sampled line.

    Raises:
        KernelError: Fewer than 4 samples
    """
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 1:
        raise KernelError("expected a single line")
    return SplineCoefficients(e=spline_solver(samples.size).solve(samples), dz=dz, z0=z0)


def spline_evaluate(coeffs: SplineCoefficients, z: float) -> float:
    """Evaluate sum_j e_j C(z - z_j) with periodic images."""
    n = coeffs.e.size
    s = (z - coeffs.z0) / coeffs.dz
    base = np.floor(s)
    t = s - base
    l = int(base) % n
    weights = bspline_weights(np.asarray(t))
    return float(sum(w * coeffs.e[(l + d) % n] for w, d in zip(weights, (-1, 0, 1, 2))))


def _as_line_shifts(shift: ShiftLike, batch_shape: tuple) -> np.ndarray:
    shift = np.asarray(shift, dtype=float)
    try:
        return np.broadcast_to(shift, batch_shape)
    except ValueError as exc:
        raise KernelError(f"shift of shape {shift.shape} does not match lines {batch_shape}") from exc


def spline_advect(data: np.ndarray, shift: ShiftLike, dz: float, axis: int = -1) -> np.ndarray:
    """Cubic-spline semi-Lagrangian advection of every line along ``axis``."""
    lines = np.moveaxis(np.asarray(data, dtype=float), axis, 0)
    n = lines.shape[0]
    coeffs = spline_solver(n).solve(lines)

    cells = -_as_line_shifts(shift, lines.shape[1:]) / dz
    base = np.floor(cells)
    t = cells - base
    offset = base.astype(np.int64)

    out = np.zeros_like(coeffs)
    node = np.arange(n).reshape((n,) + (1,) * (lines.ndim - 1))
    for weight, d in zip(bspline_weights(t), (-1, 0, 1, 2)):
        idx = np.broadcast_to((node + offset + d) % n, coeffs.shape)
        out += weight * np.take_along_axis(coeffs, idx, axis=0)
    return np.moveaxis(out, 0, axis)


def spectral_advect(data: np.ndarray, shift: ShiftLike, dz: float, axis: int = -1) -> np.ndarray:
    """Fourier-spectral advection of every line along ``axis``.

    The Nyquist coefficient of an even-length line is multiplied by
    cos(shift * beta_N), the real part of its phase factor.
    """
    lines = np.moveaxis(np.asarray(data, dtype=float), axis, 0)
    n = lines.shape[0]
    beta = rfft_wavenumbers(n, n * dz).reshape((-1,) + (1,) * (lines.ndim - 1))
    shifts = _as_line_shifts(shift, lines.shape[1:])[np.newaxis]

    phase = np.exp(-1j * beta * shifts)
    if n % 2 == 0:
        phase[-1] = np.cos(beta[-1] * shifts[0])
    out = np.fft.irfft(np.fft.rfft(lines, axis=0) * phase, n=n, axis=0)
    return np.moveaxis(out, 0, axis)


def advect_line_spline(samples: np.ndarray, shift: float, dz: float = 1.0) -> np.ndarray:
    """out_i = spline(z_i - shift) for one periodic line."""
    samples = np.asarray(samples, dtype=float)
    if samples.size < SPLINE_MIN_POINTS:
        raise KernelError(f"periodic cubic spline needs at least {SPLINE_MIN_POINTS} points")
    return spline_advect(samples, shift, dz)


def advect_line_spectral(samples: np.ndarray, shift: float, dz: float = 1.0) -> np.ndarray:
    """Phase-shift one periodic line by ``shift``."""
    samples = np.asarray(samples, dtype=float)
    if samples.size < 2:
        raise KernelError("spectral advection needs at least 2 points")
    return spectral_advect(samples, shift, dz)


class AdvectionTool(ABC):
    """Batched 1D advection backend."""

    name: str = "abstract"

    @abstractmethod
    def advect(self, data: np.ndarray, shift: ShiftLike, dz: float, axis: int) -> np.ndarray:
        """Advect every line along ``axis`` by its own constant shift."""
        pass


class SplineAdvectionTool(AdvectionTool):
    """Periodic cubic-spline semi-Lagrangian backend."""

    name = "spline"

    def advect(self, data: np.ndarray, shift: ShiftLike, dz: float, axis: int) -> np.ndarray:
        return spline_advect(data, shift, dz, axis)


class SpectralAdvectionTool(AdvectionTool):
    """Fourier-spectral backend."""

    name = "spectral"

    def advect(self, data: np.ndarray, shift: ShiftLike, dz: float, axis: int) -> np.ndarray:
        return spectral_advect(data, shift, dz, axis)


_TOOLS = {
    SplineAdvectionTool.name: SplineAdvectionTool(),
    SpectralAdvectionTool.name: SpectralAdvectionTool(),
}


def get_advection_tool(backend: str) -> AdvectionTool:
    """Look up a backend by name ("spline" or "spectral")."""
    key = getattr(backend, "value", backend)
    if key not in _TOOLS:
        raise KernelError(f"unknown advection backend '{backend}'")
    return _TOOLS[key]
