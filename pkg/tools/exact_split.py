"""Per-point algebra of the pvb substep in the 1D-2V geometry.

With B = (0, 0, b) the velocity-space operator B^ v = v x B acts on (v1, v2) as
b [[0, 1], [-1, 0]], so every 3x3 object of the general scheme reduces to a
2x2 one. All functions are vectorized over leading axes (one entry per
spatial node).
"""

import math
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from shared.errors import KernelError, StepSizeError

SERIES_THRESHOLD = 1e-4
RESONANCE_TOL = 1e-10
MAX_SHEAR_ANGLE = 0.5 * math.pi


class PvbFrozenPoint(BaseModel):
    """Midpoint quantities frozen for one pvb step, one entry per spatial node.

    The only nonzero components in this geometry are
    w = J/rho = (0, jr), grad p / rho = (gp1, 0), q = (0, q2), gpar = (gpar1, 0).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    b: np.ndarray
    theta: np.ndarray
    jr: np.ndarray
    gp1: np.ndarray
    q2: np.ndarray
    gpar1: np.ndarray

    @classmethod
    def from_midpoint(cls, b: np.ndarray, jr: np.ndarray, gp1: np.ndarray, dt: float) -> "PvbFrozenPoint":
        b = np.asarray(b, dtype=float)
        q2, gpar = decompose_pressure(gp1, b)
        return cls(
            b=b,
            theta=np.asarray(dt * b),
            jr=np.asarray(jr, dtype=float),
            gp1=np.asarray(gp1, dtype=float),
            q2=q2,
            gpar1=np.asarray(gpar[..., 0]),
        )

    @property
    def w(self) -> np.ndarray:
        return _pack(np.zeros_like(self.jr), self.jr)

    @property
    def q(self) -> np.ndarray:
        return _pack(np.zeros_like(self.q2), self.q2)

    @property
    def gpar(self) -> np.ndarray:
        return _pack(self.gpar1, np.zeros_like(self.gpar1))


def _pack(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    return np.stack(np.broadcast_arrays(first, second), axis=-1)


def decompose_pressure(gp1, b) -> Tuple[np.ndarray, np.ndarray]:
    """Split grad p / rho = (gp1, 0) into q x B plus a part parallel to B.

    Returns:
        (q2, gpar): q = (0, q2) and the parallel 2-vector gpar. Where b == 0 the
        whole force counts as parallel and q = 0.
    """
    gp1 = np.asarray(gp1, dtype=float)
    b = np.asarray(b, dtype=float)
    gp1, b = np.broadcast_arrays(gp1, b)
    zero = b == 0.0
    q2 = np.divide(gp1, b, out=np.zeros_like(gp1), where=~zero)
    gpar1 = np.where(zero, gp1, 0.0)
    return q2, _pack(gpar1, np.zeros_like(gpar1))


def rotation_matrix(theta) -> np.ndarray:
    """exp(dt B^) on (v1, v2): [[cos, sin], [-sin, cos]] with theta = dt b."""
    theta = np.asarray(theta, dtype=float)
    c, s = np.cos(theta), np.sin(theta)
    return np.stack([np.stack([c, s], axis=-1), np.stack([-s, c], axis=-1)], axis=-2)


def _sinc_terms(theta: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """sin(theta)/theta and (1 - cos(theta))/theta, series below SERIES_THRESHOLD."""
    t2 = theta * theta
    small = np.abs(theta) < SERIES_THRESHOLD
    safe = np.where(small, 1.0, theta)

    sinc = np.where(small, 1.0 - t2 / 6.0 + t2 * t2 / 120.0 - t2 * t2 * t2 / 5040.0, np.sin(safe) / safe)
    # 1 - cos = 2 sin^2(theta/2) avoids cancellation for moderate theta
    cosc = np.where(
        small,
        theta * (0.5 - t2 / 24.0 + t2 * t2 / 720.0 - t2 * t2 * t2 / 40320.0),
        2.0 * np.sin(0.5 * safe) ** 2 / safe,
    )
    return sinc, cosc


def check_resonance(theta) -> None:
    """Reject |theta| within RESONANCE_TOL of 2k pi, k >= 1.

    Raises:
        StepSizeError: The averaging matrix is singular there
    """
    theta = np.abs(np.asarray(theta, dtype=float))
    k = np.round(theta / (2.0 * math.pi))
    resonant = (k >= 1) & (np.abs(theta - 2.0 * math.pi * k) < RESONANCE_TOL)
    if np.any(resonant):
        worst = float(np.max(np.where(resonant, theta, 0.0)))
        raise StepSizeError(
            f"dt*|B| = {worst:.12g} is a resonance 2k*pi of the averaging matrix; reduce dt"
        )


def averaging_matrix(theta) -> np.ndarray:
    """M = (1/dt) int_0^dt exp(tau B^) dtau = [[S, C], [-C, S]].

    S = sin(theta)/theta, C = (1 - cos(theta))/theta, M(0) = I.
    """
    theta = np.asarray(theta, dtype=float)
    check_resonance(theta)
    sinc, cosc = _sinc_terms(theta)
    return np.stack([np.stack([sinc, cosc], axis=-1), np.stack([-cosc, sinc], axis=-1)], axis=-2)


def _solve_averaging(theta: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    # M is a scaled rotation, so M^-1 = M^T / det
    check_resonance(theta)
    sinc, cosc = _sinc_terms(theta)
    det = sinc * sinc + cosc * cosc
    r1, r2 = rhs[..., 0], rhs[..., 1]
    return _pack((sinc * r1 - cosc * r2) / det, (cosc * r1 + sinc * r2) / det)


def compute_u_bar(u_n, point: PvbFrozenPoint, dt: float) -> np.ndarray:
    """Time average of the mean velocity over the step.

    ubar = u_n + w - q + M^-1 (-w + q - dt/2 gpar), the unique vector for which
    the exact solution of du/dt = B^(u - ubar + w) - grad p/rho has average ubar.

    Raises:
        StepSizeError: dt*|b| at a resonance of M
    """
    u_n = np.asarray(u_n, dtype=float)
    w, q = point.w, point.q
    rhs = q - w - 0.5 * dt * point.gpar
    return u_n + w - q + _solve_averaging(point.theta, rhs)


def mean_velocity_after(u_n, u_bar, point: PvbFrozenPoint, dt: float) -> np.ndarray:
    """Mean velocity after the four advection stages, applied to moments only.

    u -> u - dt gpar -> u - (ubar + q - w) -> R(theta) u -> u + (ubar + q - w)
    """
    center = np.asarray(u_bar, dtype=float) + point.q - point.w
    shifted = np.asarray(u_n, dtype=float) - dt * point.gpar - center
    rotated = np.einsum("...ij,...j->...i", rotation_matrix(point.theta), shifted)
    return rotated + center


def rotation_shears(theta) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Coefficients (a, s, a) with Shear_v1(a) Shear_v2(s) Shear_v1(a) = rotation_matrix(theta).

    Shear_v1(a): (v1, v2) -> (v1 + a v2, v2); Shear_v2(s): (v1, v2) -> (v1, v2 + s v1).

    Raises:
        KernelError: |theta| > pi/2 (callers sub-cycle larger angles)
    """
    theta = np.asarray(theta, dtype=float)
    if np.any(np.abs(theta) > MAX_SHEAR_ANGLE * (1.0 + 1e-12)):
        raise KernelError("rotation_shears requires |theta| <= pi/2; sub-cycle the rotation")
    a = np.tan(0.5 * theta)
    s = -np.sin(theta)
    return a, s, a


def rotation_subcycles(theta) -> int:
    """Number of equal sub-rotations keeping every angle within pi/2."""
    largest = float(np.max(np.abs(np.asarray(theta, dtype=float)), initial=0.0))
    return max(1, math.ceil(largest / MAX_SHEAR_ANGLE - 1e-12))


def shear_matrix_v1(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    one, zero = np.ones_like(a), np.zeros_like(a)
    return np.stack([np.stack([one, a], axis=-1), np.stack([zero, one], axis=-1)], axis=-2)


def shear_matrix_v2(s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    one, zero = np.ones_like(s), np.zeros_like(s)
    return np.stack([np.stack([one, zero], axis=-1), np.stack([s, one], axis=-1)], axis=-2)
