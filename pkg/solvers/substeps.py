"""The two substeps of the Poisson splitting: pvb (fields + velocity) and xv (free streaming)."""

from typing import Tuple

import numpy as np
from pydantic import BaseModel, Field

from observability.logging import get_logger
from observability.tracing import get_tracer
from shared.config.run_config import Backend
from shared.config.settings import get_settings
from shared.errors import PicardConvergenceError
from shared.models.grid import PhaseGrid
from shared.models.records import PvbResult
from shared.models.state import Distribution, FieldState, compute_moments
from tools.exact_split import (
    PvbFrozenPoint,
    compute_u_bar,
    rotation_shears,
    rotation_subcycles,
)
from tools.interp import AdvectionTool, get_advection_tool
from tools.spectral import spectral_derivative

logger = get_logger(__name__)

V1_AXIS = 1
V2_AXIS = 2


class PicardOptions(BaseModel):
    """Controls for the field fixed-point iteration and the velocity stages."""

    tol: float = Field(default_factory=lambda: get_settings().default_picard_tol, gt=0.0)
    max_iters: int = Field(default_factory=lambda: get_settings().default_picard_max, ge=1)
    velocity_backend: Backend = Backend.SPLINE
    pressure_first: bool = True


def _midpoint_point(
    b_mid: np.ndarray,
    p_mid: np.ndarray,
    rho: np.ndarray,
    u_n: np.ndarray,
    grid: PhaseGrid,
    dt: float,
) -> Tuple[PvbFrozenPoint, np.ndarray]:
    jr = -spectral_derivative(b_mid, grid.lx) / rho
    gp1 = spectral_derivative(p_mid, grid.lx) / rho
    point = PvbFrozenPoint.from_midpoint(b_mid, jr, gp1, dt)
    return point, compute_u_bar(u_n, point, dt)


def solve_fields(
    fields: FieldState,
    rho: np.ndarray,
    u_n: np.ndarray,
    grid: PhaseGrid,
    dt: float,
    opts: PicardOptions,
) -> Tuple[np.ndarray, np.ndarray, int, float]:
    """Picard iteration of the implicit midpoint field equations.

    Only B3 and (for the pressure equation) p are iterated; rho and u_n stay
    frozen at their substep-entry values. B3 and p are updated together from
    the same midpoints.

    Returns:
        (b3, p, iterations, residual) with residual the last sup-norm change

    Raises:
        PicardConvergenceError: tol not reached within max_iters
    """
    evolve = fields.evolves_pressure
    gamma = fields.gamma
    b_n = np.asarray(fields.b3, dtype=float)
    p_n = np.asarray(fields.pressure(rho), dtype=float)

    b_k, p_k = b_n.copy(), p_n.copy()
    residual = np.inf
    for iteration in range(1, opts.max_iters + 1):
        b_mid = 0.5 * (b_n + b_k)
        p_mid = 0.5 * (p_n + p_k) if evolve else p_n
        _, u_bar = _midpoint_point(b_mid, p_mid, rho, u_n, grid, dt)
        ub1 = u_bar[:, 0]

        b_new = b_n - dt * spectral_derivative(ub1 * b_mid, grid.lx)
        if evolve:
            flux = spectral_derivative(ub1 * p_mid, grid.lx)
            compression = (gamma - 1.0) * p_mid * spectral_derivative(ub1, grid.lx)
            p_new = p_n - dt * (flux + compression)
        else:
            p_new = p_n

        residual = max(
            float(np.max(np.abs(b_new - b_k))), float(np.max(np.abs(p_new - p_k)))
        )
        b_k, p_k = b_new, p_new
        if residual <= opts.tol:
            return b_k, p_k, iteration, residual

    raise PicardConvergenceError(
        f"Picard iteration did not reach tol={opts.tol:.1e} in {opts.max_iters} iterations "
        f"(residual {residual:.3e})",
        residual=residual,
        iterations=opts.max_iters,
    )


def _shift_v1(tool: AdvectionTool, data: np.ndarray, shift, grid: PhaseGrid) -> np.ndarray:
    # v1 lines are indexed by (i, j2)
    return tool.advect(data, shift, grid.dv1, V1_AXIS)


def _shift_v2(tool: AdvectionTool, data: np.ndarray, shift, grid: PhaseGrid) -> np.ndarray:
    # v2 lines are indexed by (i, j1)
    return tool.advect(data, shift, grid.dv2, V2_AXIS)


def parallel_push(data: np.ndarray, point: PvbFrozenPoint, dt: float, tool: AdvectionTool, grid: PhaseGrid) -> np.ndarray:
    """T0: accelerate v1 by -dt * gpar1 (nonzero only where b = 0)."""
    if not np.any(point.gpar1):
        return data
    return _shift_v1(tool, data, (-dt * point.gpar1)[:, np.newaxis], grid)


def translate_velocity(data: np.ndarray, center: np.ndarray, tool: AdvectionTool, grid: PhaseGrid) -> np.ndarray:
    """Move the velocity dependence of every node's slice by ``center`` (M1, 2)."""
    data = _shift_v1(tool, data, center[:, 0][:, np.newaxis], grid)
    return _shift_v2(tool, data, center[:, 1][:, np.newaxis], grid)


def rotate_velocity(data: np.ndarray, theta: np.ndarray, tool: AdvectionTool, grid: PhaseGrid) -> np.ndarray:
    """T2: f(v) <- f(R(-theta) v) per node, as three shear advections per sub-cycle.

    Velocity moments rotate as u -> R(theta) u.
    """
    if not np.any(theta):
        return data
    cycles = rotation_subcycles(theta)
    a, s, _ = rotation_shears(-np.asarray(theta) / cycles)
    v1 = grid.v1_nodes[np.newaxis, :]
    v2 = grid.v2_nodes[np.newaxis, :]
    for _ in range(cycles):
        data = _shift_v1(tool, data, -a[:, np.newaxis] * v2, grid)
        data = _shift_v2(tool, data, -s[:, np.newaxis] * v1, grid)
        data = _shift_v1(tool, data, -a[:, np.newaxis] * v2, grid)
    return data


def pvb_step(f: Distribution, fields: FieldState, dt: float, opts: PicardOptions) -> PvbResult:
    """Modified implicit midpoint step of the velocity-field subsystem.

    Args:
        f: Distribution at substep entry
        fields: B3 and pressure at substep entry
        dt: Step size (negative values run the step backwards)
        opts: Picard and velocity-backend options

    Returns:
        PvbResult with the advected distribution and converged fields

    Raises:
        StateError: rho <= 0
        StepSizeError: dt*|B3| at a resonance of the averaging matrix
        PicardConvergenceError: Fields did not converge
    """
    tracer = get_tracer()
    grid = f.grid
    with tracer.start_as_current_span("pvb_step", attributes={"dt": dt}) as span:
        moments = compute_moments(f)
        rho = moments.rho
        u_n = moments.u

        b3, p, iterations, residual = solve_fields(fields, rho, u_n, grid, dt, opts)
        span.set_attribute("picard.iterations", iterations)
        logger.debug("picard_converged", iterations=iterations, residual=residual)

        # frozen points from the converged fields drive the velocity stages
        p_n = fields.pressure(rho)
        p_mid = 0.5 * (p_n + p) if fields.evolves_pressure else p_n
        point, u_bar = _midpoint_point(0.5 * (fields.b3 + b3), p_mid, rho, u_n, grid, dt)
        center = u_bar + point.q - point.w

        tool = get_advection_tool(opts.velocity_backend)
        data = f.data
        if opts.pressure_first:
            data = parallel_push(data, point, dt, tool, grid)
        data = translate_velocity(data, -center, tool, grid)
        data = rotate_velocity(data, point.theta, tool, grid)
        data = translate_velocity(data, center, tool, grid)
        if not opts.pressure_first:
            data = parallel_push(data, point, dt, tool, grid)

        return PvbResult(
            f=f.with_data(data),
            fields=fields.replace(b3, p if fields.evolves_pressure else None),
            picard_iterations=iterations,
            picard_residual=residual,
        )


def xv_step(f: Distribution, dt: float, backend: Backend = Backend.SPECTRAL) -> Distribution:
    """Free streaming: each x-line (j1, j2) is advected by v1_{j1} * dt."""
    if dt == 0.0:
        return f
    tracer = get_tracer()
    with tracer.start_as_current_span("xv_step", attributes={"dt": dt}):
        grid = f.grid
        tool = get_advection_tool(backend)
        shift = (grid.v1_nodes * dt)[:, np.newaxis]
        return f.with_data(tool.advect(f.data, shift, grid.dx, 0))
