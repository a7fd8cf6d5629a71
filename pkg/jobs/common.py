"""Helpers shared by the jobs: config resolution and harness state stepping."""

from pathlib import Path
from typing import Tuple

from shared.config import PRESETS, NumericsConfig, RunConfig, load_config, preset_config
from shared.errors import ConfigurationError
from shared.models.grid import make_phase_grid
from shared.models.state import SimulationState
from solvers import SchemeSpec, get_scheme, initial_state
from solvers.base import Scheme


def resolve_config(source: str) -> RunConfig:
    """A config file path, or the name of a preset.

    Raises:
        ConfigurationError: Neither a readable file nor a known preset
    """
    path = Path(source)
    if path.is_file():
        return load_config(path)
    if source in PRESETS:
        return preset_config(source)
    raise ConfigurationError(f"'{source}' is neither a config file nor a preset", key_path="config")


def with_dt(config: RunConfig, dt: float) -> RunConfig:
    """Copy of ``config`` stepping with ``dt`` to the same final time.

    Raises:
        ConfigurationError: t_final is not a multiple of dt
    """
    data = {**config.numerics.model_dump(), "dt": dt}
    try:
        numerics = NumericsConfig.model_validate(data)
    except ValueError as exc:
        raise ConfigurationError(f"dt={dt}: {exc}", key_path="numerics.dt") from exc
    return config.model_copy(update={"numerics": numerics})


def prepare(config: RunConfig) -> Tuple[Scheme, SimulationState]:
    """Scheme and initial state for a harness that steps by hand."""
    grid = make_phase_grid(config)
    return get_scheme(SchemeSpec.from_config(config)), initial_state(config, grid)
