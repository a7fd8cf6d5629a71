"""Configuration management."""

from .settings import get_settings, Settings
from .run_config import (
    Closure,
    Backend,
    SchemeKind,
    PressureProfile,
    GridConfig,
    PhysicsConfig,
    NumericsConfig,
    InitialConditionConfig,
    OutputConfig,
    RunConfig,
    parse_config,
    dump_config,
    load_config,
)
from .presets import PRESETS, preset_config

__all__ = [
    "get_settings",
    "Settings",
    "Closure",
    "Backend",
    "SchemeKind",
    "PressureProfile",
    "GridConfig",
    "PhysicsConfig",
    "NumericsConfig",
    "InitialConditionConfig",
    "OutputConfig",
    "RunConfig",
    "parse_config",
    "dump_config",
    "load_config",
    "PRESETS",
    "preset_config",
]
