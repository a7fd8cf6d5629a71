"""Time integration of the hybrid model: substeps, splitting schemes and the run loop."""

from .substeps import PicardOptions, pvb_step, solve_fields, xv_step
from .base import Scheme, SchemeSpec, StepOutcome
from .registry import SchemeRegistry, register_scheme, get_scheme
from .integrator import LieScheme, StrangScheme, advance, lie_step, strang_step
from .initial_conditions import initial_state, maxwellian
from .runtime import RunArtifacts, SimulationRuntime, run

__all__ = [
    "PicardOptions",
    "pvb_step",
    "solve_fields",
    "xv_step",
    "Scheme",
    "SchemeSpec",
    "StepOutcome",
    "SchemeRegistry",
    "register_scheme",
    "get_scheme",
    "LieScheme",
    "StrangScheme",
    "advance",
    "lie_step",
    "strang_step",
    "initial_state",
    "maxwellian",
    "RunArtifacts",
    "SimulationRuntime",
    "run",
]
