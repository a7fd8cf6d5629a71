"""Per-point pvb algebra: pressure split, rotations, averaging matrix, ubar and shears."""

import math

import numpy as np
import pytest
from scipy.linalg import expm

from shared.errors import KernelError, StepSizeError
from tools.exact_split import (
    SERIES_THRESHOLD,
    PvbFrozenPoint,
    _sinc_terms,
    averaging_matrix,
    compute_u_bar,
    decompose_pressure,
    mean_velocity_after,
    rotation_matrix,
    rotation_shears,
    rotation_subcycles,
    shear_matrix_v1,
    shear_matrix_v2,
)
from .oracles import ode_u_bar, simpson_averaging_matrix


class TestDecomposePressure:
    def test_no_force(self):
        q2, gpar = decompose_pressure(0.0, 3.0)
        assert q2 == 0.0
        np.testing.assert_array_equal(gpar, [0.0, 0.0])

    def test_perpendicular_split(self):
        q2, gpar = decompose_pressure(0.5, 2.0)
        assert q2 == pytest.approx(0.25)
        np.testing.assert_array_equal(gpar, [0.0, 0.0])
        # q x B with q = (0, q2, 0), B = (0, 0, b) gives back grad p / rho
        np.testing.assert_allclose(np.cross([0.0, q2, 0.0], [0.0, 0.0, 2.0]), [0.5, 0.0, 0.0])

    def test_zero_field_is_all_parallel(self):
        q2, gpar = decompose_pressure(0.5, 0.0)
        assert q2 == 0.0
        np.testing.assert_array_equal(gpar, [0.5, 0.0])

    def test_vectorized(self):
        q2, gpar = decompose_pressure(np.array([0.5, 0.5, 1.0]), np.array([2.0, 0.0, -4.0]))
        np.testing.assert_allclose(q2, [0.25, 0.0, -0.25])
        np.testing.assert_allclose(gpar, [[0.0, 0.0], [0.5, 0.0], [0.0, 0.0]])


class TestRotationMatrix:
    def test_identity(self):
        np.testing.assert_array_equal(rotation_matrix(0.0), np.eye(2))

    def test_quarter_turn(self):
        np.testing.assert_allclose(rotation_matrix(math.pi / 2), [[0.0, 1.0], [-1.0, 0.0]], atol=1e-16)

    def test_matches_matrix_exponential(self):
        theta = 0.05
        np.testing.assert_allclose(
            rotation_matrix(theta), expm(np.array([[0.0, theta], [-theta, 0.0]])), atol=1e-14
        )


class TestAveragingMatrix:
    def test_identity_at_zero(self):
        np.testing.assert_array_equal(averaging_matrix(0.0), np.eye(2))

    @pytest.mark.parametrize("theta", [2.0 * math.pi, -4.0 * math.pi, 2.0 * math.pi + 5e-11])
    def test_resonance_rejected(self, theta):
        with pytest.raises(StepSizeError):
            averaging_matrix(theta)

    def test_near_resonance_accepted(self):
        averaging_matrix(2.0 * math.pi + 1e-6)

    @pytest.mark.parametrize("theta", [0.05, -0.3, 1.2])
    def test_matches_simpson_oracle(self, theta):
        np.testing.assert_allclose(averaging_matrix(theta), simpson_averaging_matrix(theta), atol=1e-12)

    def test_series_branch_is_continuous(self):
        for theta in (SERIES_THRESHOLD * (1.0 - 1e-9), -SERIES_THRESHOLD * (1.0 - 1e-9)):
            sinc, cosc = _sinc_terms(np.asarray(theta))
            assert sinc == pytest.approx(math.sin(theta) / theta, abs=1e-13)
            assert cosc == pytest.approx(2.0 * math.sin(0.5 * theta) ** 2 / theta, abs=1e-13)


def _point(b, jr, gp1, dt):
    return PvbFrozenPoint.from_midpoint(np.asarray(b), np.asarray(jr), np.asarray(gp1), dt)


class TestComputeUBar:
    def test_no_forcing_keeps_u(self):
        u_n = np.array([0.1, -0.2])
        np.testing.assert_allclose(compute_u_bar(u_n, _point(1.7, 0.0, 0.0, 0.05), 0.05), u_n, atol=1e-16)

    def test_zero_field_is_midpoint_of_linear_motion(self):
        dt, gp1 = 0.1, 0.3
        u_n = np.array([0.4, 0.5])
        u_bar = compute_u_bar(u_n, _point(0.0, 0.2, gp1, dt), dt)
        np.testing.assert_allclose(u_bar, u_n - 0.5 * dt * np.array([gp1, 0.0]), atol=1e-16)

    def test_matches_ode_fixed_point(self):
        dt, b, jr, gp1 = 0.05, 1.0, 0.3, 0.2
        u_n = np.array([0.1, -0.2])
        expected = ode_u_bar(u_n, b, jr, gp1, dt)
        np.testing.assert_allclose(compute_u_bar(u_n, _point(b, jr, gp1, dt), dt), expected, atol=1e-10)

    def test_matches_ode_fixed_point_random(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            dt = rng.uniform(0.01, 0.2)
            b, jr, gp1 = rng.uniform(-3.0, 3.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)
            u_n = rng.uniform(-1.0, 1.0, size=2)
            expected = ode_u_bar(u_n, b, jr, gp1, dt)
            got = compute_u_bar(u_n, _point(b, jr, gp1, dt), dt)
            np.testing.assert_allclose(got, expected, atol=1e-10)

    def test_resonance_propagates(self):
        with pytest.raises(StepSizeError):
            compute_u_bar(np.zeros(2), _point(1.0, 0.1, 0.1, 2.0 * math.pi), 2.0 * math.pi)

    def test_cancellation_without_gradients(self):
        dt = 0.05
        u_n = np.array([[0.1, 0.2], [-0.3, 0.7]])
        point = _point(np.array([1.0, 2.5]), np.zeros(2), np.zeros(2), dt)
        u_bar = compute_u_bar(u_n, point, dt)
        np.testing.assert_allclose(mean_velocity_after(u_n, u_bar, point, dt), u_n, atol=1e-15)

    def test_velocity_change_is_lorentz_minus_pressure(self):
        dt, b, jr, gp1 = 0.05, 1.3, 0.4, -0.2
        u_n = np.array([0.2, -0.1])
        point = _point(b, jr, gp1, dt)
        u_bar = compute_u_bar(u_n, point, dt)
        u_next = mean_velocity_after(u_n, u_bar, point, dt)
        # the time average of du/dt = B^(u - ubar + w) - grad p / rho
        assert (u_next[0] - u_n[0]) / dt == pytest.approx(jr * b - gp1, abs=1e-12)


class TestRotationShears:
    def test_zero_angle(self):
        a, s, a2 = rotation_shears(0.0)
        assert (float(a), float(s), float(a2)) == (0.0, 0.0, 0.0)

    def test_quarter_turn(self):
        a, s, _ = rotation_shears(math.pi / 2)
        assert float(a) == pytest.approx(1.0)
        assert float(s) == pytest.approx(-1.0)
        product = shear_matrix_v1(a) @ shear_matrix_v2(s) @ shear_matrix_v1(a)
        np.testing.assert_allclose(product, [[0.0, 1.0], [-1.0, 0.0]], atol=1e-15)

    def test_small_angle(self):
        a, s, _ = rotation_shears(0.05)
        product = shear_matrix_v1(a) @ shear_matrix_v2(s) @ shear_matrix_v1(a)
        np.testing.assert_allclose(product, rotation_matrix(0.05), atol=1e-15)

    def test_product_identity_random_angles(self):
        theta = np.random.default_rng(0).uniform(-math.pi / 2, math.pi / 2, size=10_000)
        a, s, _ = rotation_shears(theta)
        product = shear_matrix_v1(a) @ shear_matrix_v2(s) @ shear_matrix_v1(a)
        np.testing.assert_allclose(product, rotation_matrix(theta), atol=1e-13)

    def test_large_angle_rejected(self):
        with pytest.raises(KernelError):
            rotation_shears(2.0)

    @pytest.mark.parametrize("theta, cycles", [(0.0, 1), (0.05, 1), (math.pi / 2, 1), (2.0, 2), (-math.pi, 2), (7.0, 5)])
    def test_subcycles(self, theta, cycles):
        assert rotation_subcycles(np.array([theta, 0.0])) == cycles
