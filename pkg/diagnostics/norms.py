"""Discrete l1 distances between states on the same grid."""

from typing import Dict

import numpy as np

from shared.models.state import SimulationState


def l1_distance(a: np.ndarray, b: np.ndarray, cell: float) -> float:
    """sum |a - b| * cell."""
    return float(np.sum(np.abs(np.asarray(a) - np.asarray(b))) * cell)


def state_l1_errors(state: SimulationState, reference: SimulationState) -> Dict[str, float]:
    """l1 errors of f, B3 and p; p is compared through the closure for density closures."""
    grid = state.grid
    rho = np.sum(state.f.data, axis=(1, 2)) * grid.dv
    rho_ref = np.sum(reference.f.data, axis=(1, 2)) * grid.dv
    return {
        "f": l1_distance(state.f.data, reference.f.data, grid.cell_volume),
        "b3": l1_distance(state.fields.b3, reference.fields.b3, grid.dx),
        "p": l1_distance(
            state.fields.pressure(rho), reference.fields.pressure(rho_ref), grid.dx
        ),
    }
