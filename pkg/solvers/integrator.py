"""Lie and Strang compositions of the pvb and xv substeps."""

from typing import Optional

from observability.tracing import get_tracer
from shared.config.run_config import Backend, SchemeKind
from shared.models.state import SimulationState
from .base import Scheme, SchemeSpec, StepOutcome
from .registry import register_scheme
from .substeps import PicardOptions, pvb_step, xv_step


def _lie(state: SimulationState, dt: float, space_backend: Backend, picard: PicardOptions) -> StepOutcome:
    if dt == 0.0:
        return StepOutcome(state=state)
    pvb = pvb_step(state.f, state.fields, dt, picard)
    f = xv_step(pvb.f, dt, space_backend)
    return StepOutcome(
        state=SimulationState(f=f, fields=pvb.fields, time=state.time + dt),
        picard_iterations=pvb.picard_iterations,
        picard_residual=pvb.picard_residual,
    )


def _strang(state: SimulationState, dt: float, space_backend: Backend, picard: PicardOptions) -> StepOutcome:
    if dt == 0.0:
        return StepOutcome(state=state)
    half = 0.5 * dt
    f = xv_step(state.f, half, space_backend)
    pvb = pvb_step(f, state.fields, dt, picard)
    f = xv_step(pvb.f, half, space_backend)
    return StepOutcome(
        state=SimulationState(f=f, fields=pvb.fields, time=state.time + dt),
        picard_iterations=pvb.picard_iterations,
        picard_residual=pvb.picard_residual,
    )


@register_scheme(SchemeKind.LIE)
class LieScheme(Scheme):
    """First-order composition: pvb over dt, then xv over dt."""

    @property
    def order(self) -> int:
        return 1

    def step(self, state: SimulationState, dt: float) -> StepOutcome:
        with get_tracer().start_as_current_span("lie_step", attributes={"dt": dt}):
            return _lie(state, dt, self.spec.space_backend, self.spec.picard)


@register_scheme(SchemeKind.STRANG)
class StrangScheme(Scheme):
    """Second-order symmetric composition: xv(dt/2), pvb(dt), xv(dt/2)."""

    @property
    def order(self) -> int:
        return 2

    def step(self, state: SimulationState, dt: float) -> StepOutcome:
        with get_tracer().start_as_current_span("strang_step", attributes={"dt": dt}):
            return _strang(state, dt, self.spec.space_backend, self.spec.picard)


def lie_step(
    state: SimulationState,
    dt: float,
    space_backend: Backend = Backend.SPECTRAL,
    picard: Optional[PicardOptions] = None,
) -> SimulationState:
    """One Lie step; dt may be negative or zero."""
    return _lie(state, dt, space_backend, picard or PicardOptions()).state


def strang_step(
    state: SimulationState,
    dt: float,
    space_backend: Backend = Backend.SPECTRAL,
    picard: Optional[PicardOptions] = None,
) -> SimulationState:
    """One Strang step; dt may be negative or zero."""
    return _strang(state, dt, space_backend, picard or PicardOptions()).state


def advance(scheme: Scheme, state: SimulationState, dt: float, steps: int) -> SimulationState:
    """Apply ``steps`` steps of signed size dt."""
    for _ in range(steps):
        state = scheme.step(state, dt).state
    return state
