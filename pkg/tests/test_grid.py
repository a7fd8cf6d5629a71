"""Phase grid construction and frequency layout."""

import math

import numpy as np
import pytest

from shared.config import GridConfig
from shared.errors import ConfigurationError
from shared.models.grid import angular_frequencies, frequency_of, make_phase_grid


def _grid(m1, lx, n=8):
    return make_phase_grid(
        GridConfig(m1=m1, n1=n, n2=n, lx=lx, v1_min=-1.0, v1_max=1.0, v2_min=-2.0, v2_max=2.0)
    )


def test_frequencies_m4_unit_length():
    grid = _grid(4, 2.0 * math.pi)
    np.testing.assert_allclose(sorted(grid.xi), [-1.0, 0.0, 1.0, 2.0], atol=1e-14)


def test_frequencies_m5_half_period():
    grid = _grid(5, math.pi)
    np.testing.assert_allclose(sorted(grid.xi), [-4.0, -2.0, 0.0, 2.0, 4.0], atol=1e-13)


@pytest.mark.parametrize("m1", range(4, 65))
def test_frequency_multiset_matches_symmetric_range(m1):
    xi = angular_frequencies(m1, 2.0 * math.pi)
    expected = np.arange(-((m1 - 1) // 2), m1 // 2 + 1, dtype=float)
    np.testing.assert_allclose(np.sort(xi), expected, atol=1e-12)
    assert np.count_nonzero(xi == 0.0) == 1


def test_too_few_points_is_a_configuration_error():
    block = GridConfig.model_construct(
        m1=1, n1=8, n2=8, lx=1.0, v1_min=-1.0, v1_max=1.0, v2_min=-1.0, v2_max=1.0
    )
    with pytest.raises(ConfigurationError) as err:
        make_phase_grid(block)
    assert err.value.key_path == "grid.m1"


def test_non_positive_extent_is_rejected():
    block = GridConfig.model_construct(
        m1=8, n1=8, n2=8, lx=-1.0, v1_min=-1.0, v1_max=1.0, v2_min=-1.0, v2_max=1.0
    )
    with pytest.raises(ConfigurationError):
        make_phase_grid(block)


@pytest.mark.parametrize("index, expected", [(0, 0.0), (1, 1.0), (7, -1.0), (4, 4.0)])
def test_frequency_of_fft_layout(index, expected):
    assert frequency_of(index, _grid(8, 2.0 * math.pi)) == pytest.approx(expected, abs=1e-14)


def test_frequency_of_out_of_range():
    with pytest.raises(IndexError):
        frequency_of(8, _grid(8, 2.0 * math.pi))


def test_nodes_are_uniform():
    grid = _grid(64, 5.0 * math.pi, n=128)
    for nodes, step in ((grid.x_nodes, grid.dx), (grid.v1_nodes, grid.dv1), (grid.v2_nodes, grid.dv2)):
        gaps = np.diff(nodes)
        assert np.all(np.abs(gaps - step) <= 2.0 * np.spacing(np.abs(nodes[1:]) + step))
    assert grid.dx * grid.m1 == pytest.approx(grid.lx, rel=1e-15)
    assert grid.v1_nodes[0] == grid.v1_min
    assert grid.v1_nodes[-1] < grid.v1_max
    assert grid.shape == (64, 128, 128)
