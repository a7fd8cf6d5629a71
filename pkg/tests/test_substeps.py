"""pvb and xv substeps."""

import math

import numpy as np
import pytest

from diagnostics.conservation import conserved_quantities
from shared.config import Backend, Closure, preset_config
from shared.errors import PicardConvergenceError, StepSizeError
from shared.models.state import Distribution, FieldState, compute_moments
from solvers.initial_conditions import initial_state, maxwellian
from solvers.substeps import PicardOptions, pvb_step, xv_step


def test_uniform_state_keeps_fields_and_moments(make_uniform_state):
    state = make_uniform_state()
    result = pvb_step(state.f, state.fields, 0.05, PicardOptions())
    assert result.picard_iterations == 1
    assert result.picard_residual == 0.0
    np.testing.assert_array_equal(result.fields.b3, state.fields.b3)
    before, after = compute_moments(state.f), compute_moments(result.f)
    np.testing.assert_allclose(after.rho, before.rho, rtol=1e-13)
    np.testing.assert_allclose(after.u, before.u, atol=1e-12)


def test_uniform_state_rotation_is_rigid(make_uniform_state):
    # a Maxwellian centered on its own drift is invariant under rotation about that drift
    state = make_uniform_state()
    result = pvb_step(state.f, state.fields, 0.05, PicardOptions(velocity_backend=Backend.SPECTRAL))
    np.testing.assert_allclose(result.f.data, state.f.data, atol=1e-8 * state.f.data.max())


def test_cancellation_over_many_steps(make_uniform_state):
    state = make_uniform_state()
    f, fields = state.f, state.fields
    u0 = compute_moments(f).u
    for _ in range(100):
        u_prev = compute_moments(f).u
        result = pvb_step(f, fields, 0.05, PicardOptions())
        f, fields = result.f, result.fields
        assert np.max(np.abs(compute_moments(f).u - u_prev)) <= 1e-12
    assert np.max(np.abs(compute_moments(f).u - u0)) <= 1e-11


def _landau_like(grid, kappa=6.25):
    x = grid.x_nodes
    velocity = maxwellian(grid, 0.4)
    data = (1.0 + 0.01 * np.sin(2.0 * x))[:, None, None] * velocity[None]
    fields = FieldState(b3=np.zeros(grid.m1), gamma=1.0, kappa=kappa, closure=Closure.ISOTHERMAL)
    return Distribution(data=data, grid=grid), fields


def test_zero_field_density_closure_is_pure_acceleration(grid):
    f, fields = _landau_like(grid)
    result = pvb_step(f, fields, 0.1, PicardOptions())
    assert result.picard_iterations == 1
    np.testing.assert_array_equal(result.fields.b3, 0.0)

    before = conserved_quantities(f, fields, grid)
    after = conserved_quantities(result.f, result.fields, grid)
    assert after.momentum1 == pytest.approx(before.momentum1, abs=1e-13)
    assert after.mass == pytest.approx(before.mass, rel=1e-12)

    # u1 changes by -dt * d1 p / rho at every node, p = kappa rho0 (1 + 0.01 sin 2x)
    rho = compute_moments(f).rho
    rho0 = float(np.mean(rho))
    gradient = fields.kappa * rho0 * 0.02 * np.cos(2.0 * grid.x_nodes)
    du = compute_moments(result.f).u1 - compute_moments(f).u1
    np.testing.assert_allclose(du, -0.1 * gradient / rho, atol=1e-10)


def _small_convergence_state():
    config = preset_config("convergence")
    config = config.model_copy(
        update={"grid": config.grid.model_copy(update={"n1": 64, "n2": 64})}
    )
    return initial_state(config)


def test_pvb_conserves_mass_momentum_energy():
    state = _small_convergence_state()
    grid = state.grid
    opts = PicardOptions()
    result = pvb_step(state.f, state.fields, 0.0125, opts)
    assert result.picard_residual <= opts.tol

    before = conserved_quantities(state.f, state.fields, grid)
    after = conserved_quantities(result.f, result.fields, grid)
    assert abs(after.mass - before.mass) <= 1e-12 * before.mass
    assert abs(after.momentum1 - before.momentum1) <= 1e-12 * before.mass
    tolerance = max(1e-11 * before.energy_total, 10.0 * opts.tol * grid.m1)
    assert abs(after.energy_total - before.energy_total) <= tolerance
    # B3 and p actually moved
    assert np.max(np.abs(result.fields.b3 - state.fields.b3)) > 1e-8


def test_pressure_order_commutes():
    state = _small_convergence_state()
    first = pvb_step(state.f, state.fields, 0.0125, PicardOptions(pressure_first=True))
    last = pvb_step(state.f, state.fields, 0.0125, PicardOptions(pressure_first=False))
    assert np.max(np.abs(first.f.data - last.f.data)) <= 1e-11


def test_halving_dt_does_not_increase_picard_iterations():
    state = _small_convergence_state()
    coarse = pvb_step(state.f, state.fields, 0.025, PicardOptions())
    fine = pvb_step(state.f, state.fields, 0.0125, PicardOptions())
    assert fine.picard_iterations <= coarse.picard_iterations


def test_picard_failure_reports_residual():
    state = _small_convergence_state()
    with pytest.raises(PicardConvergenceError) as err:
        pvb_step(state.f, state.fields, 0.0125, PicardOptions(max_iters=1))
    assert err.value.iterations == 1
    assert err.value.residual > 0.0


def test_resonant_step_is_rejected(make_uniform_state):
    state = make_uniform_state()
    with pytest.raises(StepSizeError):
        pvb_step(state.f, state.fields, 2.0 * math.pi, PicardOptions())


def test_large_rotation_is_subcycled(make_uniform_state):
    state = make_uniform_state(b0=2.0)
    result = pvb_step(state.f, state.fields, 1.0, PicardOptions(velocity_backend=Backend.SPECTRAL))
    before, after = compute_moments(state.f), compute_moments(result.f)
    np.testing.assert_allclose(after.u, before.u, atol=1e-12)


class TestXvStep:
    def test_zero_dt_is_identity(self, make_uniform_state):
        f = make_uniform_state().f
        assert xv_step(f, 0.0) is f

    @pytest.mark.parametrize("backend", [Backend.SPECTRAL, Backend.SPLINE])
    def test_x_independent_f_is_fixed(self, make_uniform_state, backend):
        f = make_uniform_state().f
        np.testing.assert_allclose(xv_step(f, 0.1, backend).data, f.data, atol=1e-13)

    def test_single_mode_is_phase_shifted(self, grid):
        x = grid.x_nodes
        velocity = maxwellian(grid, 0.4)
        data = (1.0 + 0.01 * np.sin(2.0 * x))[:, None, None] * velocity[None]
        f = Distribution(data=data, grid=grid)
        out = xv_step(f, 0.1, Backend.SPECTRAL)
        shift = grid.v1_nodes * 0.1
        expected = (1.0 + 0.01 * np.sin(2.0 * (x[:, None] - shift[None, :])))[:, :, None] * velocity[None]
        np.testing.assert_allclose(out.data, expected, atol=1e-13)
        assert abs(out.data.sum() - data.sum()) <= 1e-14 * data.sum()

    @pytest.mark.parametrize("backend", [Backend.SPECTRAL, Backend.SPLINE])
    def test_conserves_mass_momentum_kinetic_energy(self, backend):
        state = _small_convergence_state()
        grid = state.grid
        out = xv_step(state.f, 0.05, backend)
        before = conserved_quantities(state.f, state.fields, grid)
        after = conserved_quantities(out, state.fields, grid)
        for name in ("mass", "momentum1", "momentum2", "energy_kinetic"):
            assert getattr(after, name) == pytest.approx(getattr(before, name), rel=1e-12, abs=1e-14)
