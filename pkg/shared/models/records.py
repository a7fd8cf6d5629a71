"""Result records produced by steps, diagnostics and runs."""

from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from .state import Distribution, FieldState

TIMESERIES_COLUMNS = (
    "t",
    "mass",
    "p1",
    "p2",
    "e_kin",
    "e_mag",
    "e_prs",
    "e_tot",
    "rho_dev",
    "p_rel_err",
    "picard_iters",
)


class ConservedSnapshot(BaseModel):
    """Conserved quantities and deviation norms at one output time."""

    time: float
    mass: float
    momentum1: float
    momentum2: float
    energy_kinetic: float
    energy_magnetic: float
    energy_pressure: float = Field(default=0.0, description="Thermal energy of the closure")
    energy_total: float
    rho_dev: float = Field(..., description="sum (rho_i - 1)^2 dx")
    p_relation_err: Optional[float] = Field(
        default=None, description="sum |p - kappa rho^gamma| dx, pressure equation only"
    )
    picard_iters: int = 0

    def as_row(self) -> List[float]:
        """Values in TIMESERIES_COLUMNS order; a missing p_relation_err is written as 0."""
        return [
            self.time,
            self.mass,
            self.momentum1,
            self.momentum2,
            self.energy_kinetic,
            self.energy_magnetic,
            self.energy_pressure,
            self.energy_total,
            self.rho_dev,
            0.0 if self.p_relation_err is None else self.p_relation_err,
            float(self.picard_iters),
        ]


class PvbResult(BaseModel):
    """Outcome of one pvb substep."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    f: Distribution
    fields: FieldState
    picard_iterations: int
    picard_residual: float


class RunStatus(str, Enum):
    """Final status of a run."""

    SUCCESS = "success"
    FAILED = "failed"


class RunSummary(BaseModel):
    """Key-value summary persisted next to the time series."""

    name: str
    status: RunStatus = RunStatus.SUCCESS
    steps_completed: int = 0
    final_time: float = 0.0
    max_mass_drift: float = 0.0
    max_momentum1_drift: float = 0.0
    max_momentum2_drift: float = 0.0
    max_energy_drift: float = 0.0
    max_p_relation_err: Optional[float] = None
    max_picard_iterations: int = 0
    max_boundary_ratio: float = 0.0
    snapshots_written: int = 0
    failed_step: Optional[int] = None
    error: Optional[str] = None
    picard_residual: Optional[float] = None
    extra: Dict[str, float] = Field(default_factory=dict)

    @property
    def exit_status(self) -> int:
        return 0 if self.status == RunStatus.SUCCESS else 3
