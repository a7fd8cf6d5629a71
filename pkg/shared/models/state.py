"""Discrete unknowns of the 1D-2V hybrid model and their velocity moments."""

from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from shared.config.run_config import Closure
from shared.errors import StateError
from tools.spectral import spectral_derivative
from .grid import PhaseGrid


class Distribution(BaseModel):
    """Ion distribution f[i, j1, j2] at the phase-space nodes."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    data: np.ndarray
    grid: PhaseGrid

    def with_data(self, data: np.ndarray) -> "Distribution":
        """Same grid, new values."""
        return Distribution(data=data, grid=self.grid)

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.data)))

    def velocity_boundary_ratio(self) -> float:
        """max|f| on the velocity-domain boundary relative to max|f|."""
        peak = float(np.max(np.abs(self.data), initial=0.0))
        if peak == 0.0:
            return 0.0
        edges = (
            self.data[:, 0, :],
            self.data[:, -1, :],
            self.data[:, :, 0],
            self.data[:, :, -1],
        )
        return max(float(np.max(np.abs(edge))) for edge in edges) / peak


class FieldState(BaseModel):
    """Magnetic field B3 and electron pressure on the x-grid.

    For density closures (isothermal, adiabatic) ``p`` is None and the pressure
    is always derived as kappa * rho^gamma.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    b3: np.ndarray
    p: Optional[np.ndarray] = None
    gamma: float
    kappa: float
    closure: Closure

    @property
    def evolves_pressure(self) -> bool:
        return self.closure == Closure.PRESSURE_EQUATION

    def pressure(self, rho: np.ndarray) -> np.ndarray:
        """Electron pressure at the nodes for the given ion density."""
        if self.evolves_pressure:
            if self.p is None:
                raise StateError("pressure_equation closure requires a stored pressure")
            return self.p
        return self.kappa * np.power(rho, self.gamma)

    def replace(self, b3: np.ndarray, p: Optional[np.ndarray] = None) -> "FieldState":
        return self.model_copy(update={"b3": b3, "p": p if self.evolves_pressure else None})


class Moments(BaseModel):
    """Velocity moments per spatial node."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    rho: np.ndarray
    jf1: np.ndarray
    jf2: np.ndarray
    u1: np.ndarray
    u2: np.ndarray
    ue2: Optional[np.ndarray] = Field(
        default=None, description="Electron drift v2-component u2 + d1 B3 / rho; None without fields"
    )

    @property
    def u(self) -> np.ndarray:
        """Mean velocity packed as (M1, 2)."""
        return np.stack([self.u1, self.u2], axis=-1)


class SimulationState(BaseModel):
    """Everything a step advances."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    f: Distribution
    fields: FieldState
    time: float = 0.0

    @property
    def grid(self) -> PhaseGrid:
        return self.f.grid


def curl_term(fields: FieldState, grid: PhaseGrid) -> np.ndarray:
    """J2 = -d1 B3, the only nonzero plasma-current component."""
    return -spectral_derivative(fields.b3, grid.lx)


def compute_moments(f: Distribution, fields: Optional[FieldState] = None) -> Moments:
    """Discrete velocity moments of f.

    Args:
        f: Distribution on its phase grid
        fields: Needed for the electron drift ue2, which stays None without them

    Returns:
        Moments with rho, Jf and u = Jf / rho per node

    Raises:
        StateError: rho <= 0 at some node
    """
    grid = f.grid
    data = f.data

    rho = np.sum(data, axis=(1, 2)) * grid.dv
    if np.any(~(rho > 0.0)):
        bad = int(np.argmax(~(rho > 0.0)))
        raise StateError(f"non-positive ion density rho={rho[bad]:.3e} at node {bad}")

    jf1 = np.einsum("ijk,j->i", data, grid.v1_nodes) * grid.dv
    jf2 = np.einsum("ijk,k->i", data, grid.v2_nodes) * grid.dv
    u1 = jf1 / rho
    u2 = jf2 / rho

    ue2 = None
    if fields is not None:
        ue2 = u2 - curl_term(fields, grid) / rho

    return Moments(rho=rho, jf1=jf1, jf2=jf2, u1=u1, u2=u2, ue2=ue2)
