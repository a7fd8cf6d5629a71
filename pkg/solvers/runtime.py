"""Simulation runtime: time loop, diagnostics cadence, artifacts and failure handling."""

from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from diagnostics.conservation import conserved_quantities, relative_drift
from observability.logging import get_logger
from observability.tracing import get_tracer
from shared.config import RunConfig, get_settings
from shared.errors import PicardConvergenceError, SimulationError
from shared.models.grid import make_phase_grid
from shared.models.records import ConservedSnapshot, RunStatus, RunSummary
from shared.models.state import SimulationState
from storage.repository import RunRepository, resolve_output_dir
from .base import Scheme, SchemeSpec
from .initial_conditions import initial_state
from .registry import get_scheme

logger = get_logger(__name__)


class RunArtifacts(BaseModel):
    """What a finished run leaves behind, in memory and on disk."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    directory: Path
    timeseries: List[ConservedSnapshot] = Field(default_factory=list)
    summary: RunSummary
    final_state: Optional[SimulationState] = None


class SimulationRuntime:
    """Runs one configuration to completion with observability and artifacts."""

    def __init__(self, config: RunConfig, output_dir: Optional[Path] = None):
        self.config = config
        self.settings = get_settings()
        self.tracer = get_tracer()
        self.grid = make_phase_grid(config)
        self.scheme: Scheme = get_scheme(SchemeSpec.from_config(config))
        directory = Path(output_dir) if output_dir is not None else resolve_output_dir(config.output.directory)
        self.repository = RunRepository(directory)

    def _record(self, state: SimulationState, picard_iters: int, summary: RunSummary,
                initial: Optional[ConservedSnapshot]) -> ConservedSnapshot:
        row = conserved_quantities(state.f, state.fields, self.grid, state.time, picard_iters)
        if initial is not None:
            summary.max_mass_drift = max(summary.max_mass_drift, relative_drift(row.mass, initial.mass))
            summary.max_momentum1_drift = max(
                summary.max_momentum1_drift, abs(row.momentum1 - initial.momentum1)
            )
            summary.max_momentum2_drift = max(
                summary.max_momentum2_drift, abs(row.momentum2 - initial.momentum2)
            )
            summary.max_energy_drift = max(
                summary.max_energy_drift, relative_drift(row.energy_total, initial.energy_total)
            )
        if row.p_relation_err is not None:
            summary.max_p_relation_err = max(summary.max_p_relation_err or 0.0, row.p_relation_err)

        ratio = state.f.velocity_boundary_ratio()
        summary.max_boundary_ratio = max(summary.max_boundary_ratio, ratio)
        if ratio > self.settings.boundary_warn_ratio:
            logger.warning("velocity_boundary_mass", ratio=ratio, time=state.time)
        return row

    def _snapshot(self, state: SimulationState, output_index: int, summary: RunSummary) -> None:
        out = self.config.output
        if out.field_snapshots:
            self.repository.write_snapshot("b3", output_index, state.fields.b3, state.time)
            if state.fields.p is not None:
                self.repository.write_snapshot("p", output_index, state.fields.p, state.time)
            summary.snapshots_written += 1
        if out.distribution_snapshots and output_index % out.distribution_every == 0:
            self.repository.write_snapshot("f", output_index, state.f.data, state.time)

    def run(self) -> RunArtifacts:
        """Execute the time loop.

        Returns:
            RunArtifacts with the time series, summary and final state

        Raises:
            SimulationError: A step failed; the summary on disk records the failing step
        """
        config = self.config
        dt = config.numerics.dt
        n_steps = config.numerics.n_steps
        every = config.output_every

        summary = RunSummary(name=config.name)
        self.repository.prepare()
        self.repository.write_config(config)

        with self.tracer.start_as_current_span(
            "run", attributes={"run.name": config.name, "run.steps": n_steps, "dt": dt}
        ):
            state = initial_state(config, self.grid)
            initial = self._record(state, 0, summary, None)
            rows = [initial]
            self.repository.append_timeseries([initial])
            self._snapshot(state, 0, summary)
            logger.info("run_started", name=config.name, steps=n_steps, dt=dt,
                        directory=str(self.repository.directory))

            for step in range(1, n_steps + 1):
                try:
                    outcome = self.scheme.step(state, dt)
                except SimulationError as exc:
                    summary.status = RunStatus.FAILED
                    summary.failed_step = step
                    summary.error = str(exc)
                    if isinstance(exc, PicardConvergenceError):
                        summary.picard_residual = exc.residual
                    logger.error("step_failed", step=step, error=str(exc))
                    self.repository.write_summary(summary)
                    raise

                state = outcome.state.model_copy(update={"time": step * dt})
                summary.steps_completed = step
                summary.final_time = state.time
                summary.max_picard_iterations = max(
                    summary.max_picard_iterations, outcome.picard_iterations
                )

                if step % every == 0:
                    row = self._record(state, outcome.picard_iterations, summary, initial)
                    rows.append(row)
                    self.repository.append_timeseries([row])
                    self._snapshot(state, step // every, summary)
                    logger.debug("output_written", step=step, time=state.time,
                                 energy_total=row.energy_total)

            self.repository.write_summary(summary)
            logger.info(
                "run_finished",
                name=config.name,
                steps=summary.steps_completed,
                max_energy_drift=summary.max_energy_drift,
                max_picard_iterations=summary.max_picard_iterations,
            )

        return RunArtifacts(
            directory=self.repository.directory, timeseries=rows, summary=summary, final_state=state
        )


def run(config: RunConfig, output_dir: Optional[Path] = None) -> RunArtifacts:
    """Run ``config`` and write its artifacts."""
    return SimulationRuntime(config, output_dir).run()
