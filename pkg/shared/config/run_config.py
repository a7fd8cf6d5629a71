"""Run configuration models and the flat ``section.key = value`` format."""

from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from shared.errors import ConfigurationError

from .settings import get_settings


class Closure(str, Enum):
    """Electron closure."""

    ISOTHERMAL = "isothermal"
    ADIABATIC = "adiabatic"
    PRESSURE_EQUATION = "pressure_equation"


class Backend(str, Enum):
    """1D advection kernel."""

    SPLINE = "spline"
    SPECTRAL = "spectral"


class SchemeKind(str, Enum):
    """Splitting composition."""

    LIE = "lie"
    STRANG = "strang"


class PressureProfile(str, Enum):
    """How the initial electron pressure is built."""

    CLOSURE = "closure"  # p = kappa * rho^gamma from the initial density
    POWER = "power"  # p = p0 * (1 + delta_rho)^p_exponent
    CONSTANT = "constant"  # p = p0


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", validate_assignment=True)


class GridConfig(_Section):
    """Phase-space grid block."""

    m1: int = Field(..., ge=4, description="Spatial point count")
    n1: int = Field(..., ge=4, description="v1 point count")
    n2: int = Field(..., ge=4, description="v2 point count")
    lx: float = Field(..., gt=0.0, description="Length of the spatial domain")
    v1_min: float
    v1_max: float
    v2_min: float
    v2_max: float

    @model_validator(mode="after")
    def _check_extents(self) -> "GridConfig":
        if not self.v1_max > self.v1_min:
            raise ValueError("v1_max must exceed v1_min")
        if not self.v2_max > self.v2_min:
            raise ValueError("v2_max must exceed v2_min")
        return self


class PhysicsConfig(_Section):
    """Electron closure and model constants."""

    closure: Closure = Closure.ISOTHERMAL
    gamma: float = Field(default=5.0 / 3.0, gt=0.0)
    kappa: float = Field(..., gt=0.0)

    @model_validator(mode="before")
    @classmethod
    def _isothermal_gamma(cls, data: Any) -> Any:
        # isothermal means p = kappa * rho
        if isinstance(data, dict):
            closure = data.get("closure", Closure.ISOTHERMAL)
            if getattr(closure, "value", closure) == Closure.ISOTHERMAL.value:
                data = {**data, "gamma": 1.0}
        return data

    @model_validator(mode="after")
    def _check_gamma(self) -> "PhysicsConfig":
        if self.closure != Closure.ISOTHERMAL and self.gamma == 1.0:
            raise ValueError(f"closure {self.closure.value} requires gamma != 1")
        return self


class NumericsConfig(_Section):
    """Time stepping and kernel choices."""

    dt: float = Field(..., gt=0.0)
    t_final: float = Field(..., ge=0.0)
    scheme: SchemeKind = SchemeKind.STRANG
    velocity_backend: Backend = Backend.SPLINE
    space_backend: Backend = Backend.SPECTRAL
    picard_tol: float = Field(default_factory=lambda: get_settings().default_picard_tol, gt=0.0)
    picard_max: int = Field(default_factory=lambda: get_settings().default_picard_max, ge=1)
    pressure_first: bool = True

    @property
    def n_steps(self) -> int:
        return int(round(self.t_final / self.dt))

    @model_validator(mode="after")
    def _check_horizon(self) -> "NumericsConfig":
        steps = self.t_final / self.dt
        if abs(steps - round(steps)) > 1e-9 * max(1.0, steps):
            raise ValueError("t_final must be an integer multiple of dt")
        return self


class InitialConditionConfig(_Section):
    """Drifting Maxwellian with a density perturbation, plus field profiles.

    f = (1 + a sin(k x)) / (pi v_t^2) exp(-|v - drift|^2 / v_t^2)
    B3 = b0 + b_amplitude * sum_m sin(m x) over b_modes
    """

    v_t: float = Field(..., gt=0.0)
    drift1: float = 0.0
    drift2: float = 0.0
    density_amplitude: float = 0.0
    density_mode: float = 0.0
    b0: float = 0.0
    b_amplitude: float = 0.0
    b_modes: List[float] = Field(default_factory=list)
    p_profile: PressureProfile = PressureProfile.CLOSURE
    p0: Optional[float] = None
    p_exponent: float = 1.0

    @field_validator("b_modes", mode="before")
    @classmethod
    def _split_modes(cls, value: Any) -> Any:
        if isinstance(value, str):
            return [item.strip() for item in value.split(",") if item.strip()]
        return value

    @model_validator(mode="after")
    def _check_pressure(self) -> "InitialConditionConfig":
        if self.p_profile != PressureProfile.CLOSURE and self.p0 is None:
            raise ValueError(f"p_profile {self.p_profile.value} requires p0")
        return self


class OutputConfig(_Section):
    """Where and how often to write artifacts."""

    directory: Path = Path("run")
    cadence: float = Field(default=0.1, gt=0.0)
    field_snapshots: bool = True
    distribution_snapshots: bool = False
    distribution_every: int = Field(default=10, ge=1)


class RunConfig(BaseModel):
    """Full experiment description."""

    model_config = ConfigDict(extra="forbid")

    name: str = "run"
    preset: Optional[str] = None
    grid: GridConfig
    physics: PhysicsConfig
    numerics: NumericsConfig
    initial: InitialConditionConfig
    output: OutputConfig = Field(default_factory=OutputConfig)

    @property
    def output_every(self) -> int:
        """Steps between two diagnostics rows."""
        return max(1, int(round(self.output.cadence / self.numerics.dt)))

    @model_validator(mode="after")
    def _check_cadence(self) -> "RunConfig":
        ratio = self.output.cadence / self.numerics.dt
        if ratio < 1.0 - 1e-9 or abs(ratio - round(ratio)) > 1e-9 * max(1.0, ratio):
            raise ValueError("output.cadence must be a positive integer multiple of numerics.dt")
        return self


_SECTIONS = ("grid", "physics", "numerics", "initial", "output")


def _coerce_errors(exc: ValidationError) -> ConfigurationError:
    errors = exc.errors()
    first = errors[0]
    key_path = ".".join(str(part) for part in first["loc"]) or None
    message = "; ".join(
        f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}" for err in errors
    )
    return ConfigurationError(message, key_path=None if not key_path else key_path)


def _merge(base: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _parse_lines(text: str) -> Dict[str, Any]:
    tree: Dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        parts = key.split(".")
        if len(parts) > 2 or not all(parts):
            raise ConfigurationError(f"line {lineno}: malformed key", key_path=key)
        if len(parts) == 2 and parts[0] not in _SECTIONS:
            raise ConfigurationError("unknown section", key_path=key)
        node = tree
        for part in parts[:-1]:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise ConfigurationError("key used as both value and section", key_path=key)
        if parts[-1] in node:
            raise ConfigurationError("duplicate key", key_path=key)
        node[parts[-1]] = value
    return tree


def parse_config(text: str) -> RunConfig:
    """Parse and validate a flat ``section.key = value`` configuration.

    A ``preset = <name>`` line seeds every block from the named preset; explicit
    keys override it.

    Raises:
        ConfigurationError: Unknown/missing keys or invariant violations, with key path
    """
    from .presets import preset_config

    tree = _parse_lines(text)
    preset = tree.get("preset")
    if preset:
        base = preset_config(preset).model_dump(mode="json")
        base["preset"] = preset
        tree = _merge(base, tree)
    for section in _SECTIONS:
        tree.setdefault(section, {})

    try:
        return RunConfig.model_validate(tree)
    except ValidationError as exc:
        raise _coerce_errors(exc) from exc


def load_config(path: Path) -> RunConfig:
    """Read and parse a configuration file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read config: {exc}", key_path=str(path)) from exc
    return parse_config(text)


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, (list, tuple)):
        return ", ".join(_format_value(item) for item in value)
    return str(value)


def dump_config(config: RunConfig) -> str:
    """Render a config in the flat format; floats keep 17 significant digits."""
    lines = [f"name = {config.name}"]
    if config.preset:
        lines.append(f"preset = {config.preset}")
    for section in _SECTIONS:
        block = getattr(config, section)
        lines.append("")
        for key in type(block).model_fields:
            value = getattr(block, key)
            if value is None:
                continue
            lines.append(f"{section}.{key} = {_format_value(value)}")
    return "\n".join(lines) + "\n"
