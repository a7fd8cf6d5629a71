"""Discrete conserved quantities and deviation norms."""

import numpy as np
from scipy.special import xlogy

from shared.config.run_config import Closure
from shared.models.grid import PhaseGrid
from shared.models.records import ConservedSnapshot
from shared.models.state import Distribution, FieldState


def thermal_energy(fields: FieldState, rho: np.ndarray, dx: float) -> float:
    """Internal energy of the electron closure.

    pressure equation: sum p / (gamma - 1) dx with the stored p
    adiabatic:         the same with p = kappa rho^gamma
    isothermal:        kappa sum rho ln rho dx
    """
    if fields.closure == Closure.ISOTHERMAL:
        return float(fields.kappa * np.sum(xlogy(rho, rho)) * dx)
    if fields.closure == Closure.ADIABATIC:
        pressure = fields.kappa * np.power(np.maximum(rho, 0.0), fields.gamma)
    else:
        pressure = fields.p
    return float(np.sum(pressure) * dx / (fields.gamma - 1.0))


def conserved_quantities(
    f: Distribution,
    fields: FieldState,
    grid: PhaseGrid,
    time: float = 0.0,
    picard_iters: int = 0,
) -> ConservedSnapshot:
    """Mass, momentum, energy parts and deviation norms of a state.

    Pure accounting: f = 0 is accepted and gives zeros.

    Args:
        f: Ion distribution
        fields: B3 and pressure
        grid: Phase grid of f
        time: Time stamp stored in the snapshot
        picard_iters: Iterations of the last pvb substep

    Returns:
        ConservedSnapshot with energy_total the sum of its parts
    """
    data = f.data
    dx = grid.dx
    volume = grid.cell_volume
    v1 = grid.v1_nodes
    v2 = grid.v2_nodes

    rho = np.sum(data, axis=(1, 2)) * grid.dv
    density = np.sum(data, axis=0)  # (N1, N2)

    mass = float(np.sum(density) * volume)
    momentum1 = float(np.sum(density * v1[:, np.newaxis]) * volume)
    momentum2 = float(np.sum(density * v2[np.newaxis, :]) * volume)
    speed2 = v1[:, np.newaxis] ** 2 + v2[np.newaxis, :] ** 2
    energy_kinetic = float(0.5 * np.sum(density * speed2) * volume)
    energy_magnetic = float(0.5 * np.sum(fields.b3 * fields.b3) * dx)
    energy_pressure = thermal_energy(fields, rho, dx)

    p_relation_err = None
    if fields.closure == Closure.PRESSURE_EQUATION:
        relation = fields.kappa * np.power(np.maximum(rho, 0.0), fields.gamma)
        p_relation_err = float(np.sum(np.abs(fields.p - relation)) * dx)

    return ConservedSnapshot(
        time=time,
        mass=mass,
        momentum1=momentum1,
        momentum2=momentum2,
        energy_kinetic=energy_kinetic,
        energy_magnetic=energy_magnetic,
        energy_pressure=energy_pressure,
        energy_total=energy_kinetic + energy_magnetic + energy_pressure,
        rho_dev=float(np.sum((rho - 1.0) ** 2) * dx),
        p_relation_err=p_relation_err,
        picard_iters=picard_iters,
    )


def relative_drift(value: float, reference: float) -> float:
    """|value - reference| / |reference|, absolute when the reference is zero."""
    scale = abs(reference)
    return abs(value - reference) / scale if scale > 0.0 else abs(value - reference)
