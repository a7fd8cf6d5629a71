"""Shared fixtures: small grids, Maxwellian states and isolated output roots."""

import math

import numpy as np
import pytest

from shared.config import (
    Closure,
    GridConfig,
    InitialConditionConfig,
    NumericsConfig,
    OutputConfig,
    PhysicsConfig,
    PressureProfile,
    RunConfig,
    get_settings,
)
from shared.models.grid import make_phase_grid
from shared.models.state import Distribution, FieldState, SimulationState
from solvers.initial_conditions import maxwellian


@pytest.fixture(autouse=True)
def isolated_output_root(tmp_path, monkeypatch):
    """Every test writes under its own tmp directory."""
    monkeypatch.setenv("HVSL_OUTPUT_ROOT", str(tmp_path / "runs"))
    monkeypatch.setenv("HVSL_LOG_JSON", "false")
    get_settings.cache_clear()
    yield tmp_path / "runs"
    get_settings.cache_clear()


@pytest.fixture
def grid_config():
    return GridConfig(m1=8, n1=64, n2=64, lx=math.pi, v1_min=-2.5, v1_max=2.5, v2_min=-2.5, v2_max=2.5)


@pytest.fixture
def grid(grid_config):
    return make_phase_grid(grid_config)


@pytest.fixture
def tiny_config(tmp_path):
    """Pressure-equation run on a small grid, 4 steps with output every 2."""
    return RunConfig(
        name="tiny",
        grid=GridConfig(m1=8, n1=64, n2=64, lx=math.pi, v1_min=-2.5, v1_max=2.5, v2_min=-2.5, v2_max=2.5),
        physics=PhysicsConfig(closure=Closure.PRESSURE_EQUATION, gamma=5.0 / 3.0, kappa=0.09),
        numerics=NumericsConfig(dt=0.0125, t_final=0.05),
        initial=InitialConditionConfig(
            v_t=0.4, drift1=0.1, drift2=0.2, density_amplitude=0.01, density_mode=2.0,
            b0=1.0, b_amplitude=0.01, b_modes=[2.0],
            p_profile=PressureProfile.POWER, p0=0.09, p_exponent=5.0 / 3.0,
        ),
        output=OutputConfig(directory=tmp_path / "tiny", cadence=0.025, field_snapshots=True),
    )


def uniform_state(grid, closure=Closure.ISOTHERMAL, b0=1.0, drift=(0.1, 0.2), v_t=0.4, kappa=0.09):
    """Spatially uniform drifting Maxwellian with uniform fields."""
    velocity = maxwellian(grid, v_t, *drift)
    data = np.broadcast_to(velocity, grid.shape).copy()
    gamma = 1.0 if closure == Closure.ISOTHERMAL else 5.0 / 3.0
    p = np.full(grid.m1, kappa) if closure == Closure.PRESSURE_EQUATION else None
    fields = FieldState(b3=np.full(grid.m1, b0), p=p, gamma=gamma, kappa=kappa, closure=closure)
    return SimulationState(f=Distribution(data=data, grid=grid), fields=fields)


@pytest.fixture
def make_uniform_state(grid):
    def factory(**kwargs):
        return uniform_state(grid, **kwargs)

    return factory
