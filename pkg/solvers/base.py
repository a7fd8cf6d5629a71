"""Base scheme interface and contracts."""

from abc import ABC, abstractmethod
from typing import Any, Dict

from pydantic import BaseModel, ConfigDict, Field

from shared.config.run_config import Backend, RunConfig, SchemeKind
from shared.models.state import SimulationState
from .substeps import PicardOptions


class SchemeSpec(BaseModel):
    """Time-stepping description shared by all compositions."""

    kind: SchemeKind = SchemeKind.STRANG
    dt: float = Field(..., gt=0.0)
    t_final: float = Field(..., ge=0.0)
    space_backend: Backend = Backend.SPECTRAL
    picard: PicardOptions = Field(default_factory=PicardOptions)

    @classmethod
    def from_config(cls, config: RunConfig) -> "SchemeSpec":
        numerics = config.numerics
        return cls(
            kind=numerics.scheme,
            dt=numerics.dt,
            t_final=numerics.t_final,
            space_backend=numerics.space_backend,
            picard=PicardOptions(
                tol=numerics.picard_tol,
                max_iters=numerics.picard_max,
                velocity_backend=numerics.velocity_backend,
                pressure_first=numerics.pressure_first,
            ),
        )


class StepOutcome(BaseModel):
    """State after one composed step plus the Picard statistics of its pvb substep."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    state: SimulationState
    picard_iterations: int = 0
    picard_residual: float = 0.0


class Scheme(ABC):
    """Base class for splitting compositions.

    A scheme advances a SimulationState by one step of signed size dt; negative
    dt runs the composition backwards.
    """

    def __init__(self, spec: SchemeSpec):
        self.spec = spec
        self.name = spec.kind.value
        self.description = self.__doc__ or "No description"

    @abstractmethod
    def step(self, state: SimulationState, dt: float) -> StepOutcome:
        """Advance ``state`` by ``dt``.

        Raises:
            SimulationError: Any substep failure
        """
        pass

    @property
    @abstractmethod
    def order(self) -> int:
        """Formal order of accuracy in dt."""
        pass

    def get_metadata(self) -> Dict[str, Any]:
        return {"name": self.name, "order": self.order, "description": self.description}
