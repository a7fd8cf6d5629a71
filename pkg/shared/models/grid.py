"""Uniform periodic phase-space grid and its Fourier dual."""

from typing import Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from shared.config.run_config import GridConfig, RunConfig
from shared.errors import ConfigurationError

MIN_POINTS = 4


class PhaseGrid(BaseModel):
    """Periodic x-grid, two periodic velocity grids, and spatial frequencies.

    Layout conventions owned here:
        - distributions are indexed f[i, j1, j2] with j2 fastest-varying
        - frequencies are stored in FFT-natural order (0, 1, ..., -1)
        - velocity node sets are {v_min + j dv, j = 0..N-1}; v_max is the periodic
          image of v_min
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lx: float
    m1: int
    dx: float
    x_nodes: np.ndarray

    v1_min: float
    v1_max: float
    n1: int
    dv1: float
    v1_nodes: np.ndarray

    v2_min: float
    v2_max: float
    n2: int
    dv2: float
    v2_nodes: np.ndarray

    xi: np.ndarray = Field(..., description="Spatial angular frequencies, FFT order")

    @property
    def shape(self) -> tuple:
        return (self.m1, self.n1, self.n2)

    @property
    def dv(self) -> float:
        """Velocity cell area dv1*dv2."""
        return self.dv1 * self.dv2

    @property
    def cell_volume(self) -> float:
        return self.dx * self.dv1 * self.dv2


def line_nodes(start: float, length: float, count: int) -> np.ndarray:
    """Nodes start + i*(length/count), i = 0..count-1."""
    return start + np.arange(count, dtype=float) * (length / count)


def angular_frequencies(count: int, length: float) -> np.ndarray:
    """2*pi/L * k in FFT order, k in [-floor((M-1)/2), floor(M/2)].

    Differs from numpy's ``fftfreq`` only for even M, where the Nyquist index
    carries +M/2 instead of -M/2.
    """
    k = np.arange(count)
    k = np.where(k <= count // 2, k, k - count)
    return (2.0 * np.pi / length) * k.astype(float)


def _check(value: float, minimum: float, key: str, strict: bool = True) -> None:
    if not np.isfinite(value) or (value <= minimum if strict else value < minimum):
        relation = ">" if strict else ">="
        raise ConfigurationError(f"must be {relation} {minimum}, got {value}", key_path=key)


def make_phase_grid(config: Union[RunConfig, GridConfig]) -> PhaseGrid:
    """Construct the phase-space grid described by a run configuration.

    Args:
        config: Run configuration (or just its grid block)

    Returns:
        PhaseGrid satisfying the uniformity and frequency-set invariants

    Raises:
        ConfigurationError: Non-positive extents or point counts below 4
    """
    block = config.grid if isinstance(config, RunConfig) else config

    for key in ("m1", "n1", "n2"):
        _check(getattr(block, key), MIN_POINTS, f"grid.{key}", strict=False)
    _check(block.lx, 0.0, "grid.lx")
    _check(block.v1_max - block.v1_min, 0.0, "grid.v1_max")
    _check(block.v2_max - block.v2_min, 0.0, "grid.v2_max")

    v1_len = block.v1_max - block.v1_min
    v2_len = block.v2_max - block.v2_min

    return PhaseGrid(
        lx=block.lx,
        m1=block.m1,
        dx=block.lx / block.m1,
        x_nodes=line_nodes(0.0, block.lx, block.m1),
        v1_min=block.v1_min,
        v1_max=block.v1_max,
        n1=block.n1,
        dv1=v1_len / block.n1,
        v1_nodes=line_nodes(block.v1_min, v1_len, block.n1),
        v2_min=block.v2_min,
        v2_max=block.v2_max,
        n2=block.n2,
        dv2=v2_len / block.n2,
        v2_nodes=line_nodes(block.v2_min, v2_len, block.n2),
        xi=angular_frequencies(block.m1, block.lx),
    )


def frequency_of(k_index: int, grid: PhaseGrid) -> float:
    """Angular frequency stored at FFT slot ``k_index``.

    Raises:
        IndexError: If the index is outside [0, M1)
    """
    if not 0 <= k_index < grid.m1:
        raise IndexError(f"frequency index {k_index} outside [0, {grid.m1})")
    return float(grid.xi[k_index])
