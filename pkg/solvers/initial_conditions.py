"""Initial distribution and fields built from the ``initial`` configuration block."""

from typing import Optional

import numpy as np

from observability.logging import get_logger
from shared.config.run_config import Closure, InitialConditionConfig, PressureProfile, RunConfig
from shared.models.grid import PhaseGrid, make_phase_grid
from shared.models.state import Distribution, FieldState, SimulationState, compute_moments

logger = get_logger(__name__)


def density_perturbation(initial: InitialConditionConfig, x: np.ndarray) -> np.ndarray:
    """delta_rho(x) = amplitude * sin(mode * x)."""
    return initial.density_amplitude * np.sin(initial.density_mode * x)


def maxwellian(grid: PhaseGrid, v_t: float, drift1: float = 0.0, drift2: float = 0.0) -> np.ndarray:
    """Normalized 2V Maxwellian on the velocity grid, shape (N1, N2)."""
    v1 = grid.v1_nodes[:, np.newaxis] - drift1
    v2 = grid.v2_nodes[np.newaxis, :] - drift2
    return np.exp(-(v1 * v1 + v2 * v2) / (v_t * v_t)) / (np.pi * v_t * v_t)


def magnetic_profile(initial: InitialConditionConfig, x: np.ndarray) -> np.ndarray:
    """B3(x) = b0 + b_amplitude * sum over b_modes of sin(k x)."""
    b3 = np.full_like(x, initial.b0, dtype=float)
    for mode in initial.b_modes:
        b3 += initial.b_amplitude * np.sin(mode * x)
    return b3


def initial_state(config: RunConfig, grid: Optional[PhaseGrid] = None) -> SimulationState:
    """Perturbed drifting Maxwellian plus field profiles at t = 0.

    Args:
        config: Validated run configuration
        grid: Prebuilt grid for the config (built when omitted)

    Returns:
        SimulationState at time 0
    """
    grid = grid or make_phase_grid(config)
    initial = config.initial
    physics = config.physics
    x = grid.x_nodes

    delta = density_perturbation(initial, x)
    velocity = maxwellian(grid, initial.v_t, initial.drift1, initial.drift2)
    f = Distribution(data=(1.0 + delta)[:, np.newaxis, np.newaxis] * velocity[np.newaxis], grid=grid)

    p = None
    if physics.closure == Closure.PRESSURE_EQUATION:
        if initial.p_profile == PressureProfile.CLOSURE:
            rho = compute_moments(f).rho
            p = physics.kappa * np.power(rho, physics.gamma)
        elif initial.p_profile == PressureProfile.POWER:
            p = initial.p0 * np.power(1.0 + delta, initial.p_exponent)
        else:
            p = np.full_like(x, initial.p0, dtype=float)
    elif initial.p_profile != PressureProfile.CLOSURE:
        logger.warning(
            "pressure_profile_ignored",
            closure=physics.closure.value,
            p_profile=initial.p_profile.value,
        )

    fields = FieldState(
        b3=magnetic_profile(initial, x),
        p=p,
        gamma=physics.gamma,
        kappa=physics.kappa,
        closure=physics.closure,
    )
    return SimulationState(f=f, fields=fields, time=0.0)
