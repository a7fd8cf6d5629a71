"""Named experiment presets (convergence, reversibility, Landau damping, Bernstein waves)."""

import math
from typing import Callable, Dict

from shared.errors import ConfigurationError

from .run_config import (
    Backend,
    Closure,
    GridConfig,
    InitialConditionConfig,
    NumericsConfig,
    OutputConfig,
    PhysicsConfig,
    PressureProfile,
    RunConfig,
    SchemeKind,
)

ADIABATIC_GAMMA = 5.0 / 3.0


def _convergence() -> RunConfig:
    # drifting Maxwellian, B3 = 1 + 0.01 sin 2x, p = 0.09 (1 + drho)^(5/3)
    return RunConfig(
        name="convergence",
        grid=GridConfig(m1=16, n1=128, n2=128, lx=math.pi,
                        v1_min=-2.5, v1_max=2.5, v2_min=-2.5, v2_max=2.5),
        physics=PhysicsConfig(closure=Closure.PRESSURE_EQUATION, gamma=ADIABATIC_GAMMA, kappa=0.09),
        numerics=NumericsConfig(
            dt=0.0125, t_final=0.1, scheme=SchemeKind.STRANG, velocity_backend=Backend.SPECTRAL
        ),
        initial=InitialConditionConfig(
            v_t=0.4, drift1=0.1, drift2=0.2,
            density_amplitude=0.01, density_mode=2.0,
            b0=1.0, b_amplitude=0.01, b_modes=[2.0],
            p_profile=PressureProfile.POWER, p0=0.09, p_exponent=ADIABATIC_GAMMA,
        ),
        output=OutputConfig(directory="convergence", cadence=0.0125, field_snapshots=False),
    )


def _reversibility() -> RunConfig:
    config = _convergence()
    return config.model_copy(
        update={
            "name": "reversibility",
            "numerics": NumericsConfig(
                dt=0.1, t_final=2.0, scheme=SchemeKind.STRANG,
                velocity_backend=Backend.SPECTRAL, space_backend=Backend.SPECTRAL,
            ),
            "output": OutputConfig(directory="reversibility", cadence=0.1, field_snapshots=False),
        }
    )


def _landau() -> RunConfig:
    return RunConfig(
        name="landau",
        grid=GridConfig(m1=32, n1=128, n2=64, lx=5.0 * math.pi,
                        v1_min=-8.0, v1_max=8.0, v2_min=-8.0, v2_max=8.0),
        physics=PhysicsConfig(closure=Closure.ISOTHERMAL, kappa=6.25),
        numerics=NumericsConfig(dt=0.1, t_final=50.0),
        initial=InitialConditionConfig(v_t=1.4142, density_amplitude=0.01, density_mode=0.4),
        output=OutputConfig(directory="landau", cadence=0.1, field_snapshots=False),
    )


def _landau_pressure() -> RunConfig:
    config = _landau()
    # p0 = 6.25/gamma (1 + drho)^gamma linearizes to the isothermal kappa = 6.25 case
    return config.model_copy(
        update={
            "name": "landau_pressure",
            "physics": PhysicsConfig(
                closure=Closure.PRESSURE_EQUATION, gamma=ADIABATIC_GAMMA, kappa=6.25 / ADIABATIC_GAMMA
            ),
            "initial": config.initial.model_copy(
                update={
                    "p_profile": PressureProfile.POWER,
                    "p0": 6.25 / ADIABATIC_GAMMA,
                    "p_exponent": ADIABATIC_GAMMA,
                }
            ),
            "output": OutputConfig(directory="landau_pressure", cadence=0.1, field_snapshots=False),
        }
    )


def _bernstein() -> RunConfig:
    return RunConfig(
        name="bernstein",
        grid=GridConfig(m1=64, n1=128, n2=128, lx=4.0 * math.pi,
                        v1_min=-3.0, v1_max=3.0, v2_min=-3.0, v2_max=3.0),
        physics=PhysicsConfig(closure=Closure.ISOTHERMAL, kappa=0.09),
        numerics=NumericsConfig(dt=0.05, t_final=80.0),
        initial=InitialConditionConfig(
            v_t=0.4, b0=1.0, b_amplitude=1e-5, b_modes=[k / 2.0 for k in range(1, 33)],
        ),
        output=OutputConfig(directory="bernstein", cadence=0.1, field_snapshots=True),
    )


def _bernstein_pressure() -> RunConfig:
    config = _bernstein()
    return config.model_copy(
        update={
            "name": "bernstein_pressure",
            "physics": PhysicsConfig(
                closure=Closure.PRESSURE_EQUATION, gamma=ADIABATIC_GAMMA, kappa=0.09
            ),
            "initial": config.initial.model_copy(
                update={"p_profile": PressureProfile.CONSTANT, "p0": 0.09}
            ),
            "output": OutputConfig(directory="bernstein_pressure", cadence=0.1),
        }
    )


PRESETS: Dict[str, Callable[[], RunConfig]] = {
    "convergence": _convergence,
    "reversibility": _reversibility,
    "landau": _landau,
    "landau_pressure": _landau_pressure,
    "bernstein": _bernstein,
    "bernstein_pressure": _bernstein_pressure,
}


def preset_config(name: str) -> RunConfig:
    """Build the named preset.

    Raises:
        ConfigurationError: If the preset is unknown
    """
    if name not in PRESETS:
        raise ConfigurationError(
            f"unknown preset '{name}' (known: {', '.join(sorted(PRESETS))})", key_path="preset"
        )
    config = PRESETS[name]()
    return config.model_copy(update={"preset": name})
