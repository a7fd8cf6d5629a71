"""Space-time spectra of field histories and extraction of dispersion branches."""

from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.signal import find_peaks
from scipy.signal.windows import hann

from shared.errors import AnalysisError
from shared.models.grid import PhaseGrid

MIN_SAMPLES = 16
CADENCE_RTOL = 1e-9


class Spectrum(BaseModel):
    """Power over (k, omega), both axes ascending and centered on zero."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: np.ndarray
    omega: np.ndarray
    power: np.ndarray = Field(..., description="shape (len(k), len(omega))")

    def peak(self) -> Tuple[float, float]:
        """(k, omega) of the global maximum with k >= 0 and omega >= 0."""
        quadrant = np.where(
            (self.k[:, np.newaxis] >= 0.0) & (self.omega[np.newaxis, :] >= 0.0), self.power, -np.inf
        )
        ik, iw = np.unravel_index(int(np.argmax(quadrant)), quadrant.shape)
        return float(self.k[ik]), float(self.omega[iw])


class Branch(BaseModel):
    """One dispersion branch as ridge points ordered by k."""

    k: List[float] = Field(default_factory=list)
    omega: List[float] = Field(default_factory=list)

    def at_largest_k(self) -> Tuple[float, float]:
        return self.k[-1], self.omega[-1]


def spacetime_spectrum(
    field_history: np.ndarray,
    dt_out: float,
    grid: PhaseGrid,
    times: Optional[Sequence[float]] = None,
) -> Spectrum:
    """Windowed 2D DFT power of a field history B(x, t).

    Args:
        field_history: Array of shape (M1, T), column n sampled at n * dt_out
        dt_out: Output cadence
        grid: Phase grid of the run (x spacing)
        times: Sample times, checked for uniform cadence when given

    Returns:
        Spectrum normalized so that its total power equals the energy of the
        windowed, mean-free signal. A wave cos(k x - w t) peaks at (k, w).

    Raises:
        AnalysisError: Fewer than 16 samples or non-uniform cadence
    """
    history = np.asarray(field_history, dtype=float)
    if history.ndim != 2 or history.shape[0] != grid.m1:
        raise AnalysisError(f"expected history of shape ({grid.m1}, T), got {history.shape}")
    count = history.shape[1]
    if count < MIN_SAMPLES:
        raise AnalysisError(f"need at least {MIN_SAMPLES} samples in time, got {count}")
    if times is not None:
        steps = np.diff(np.asarray(times, dtype=float))
        if np.any(np.abs(steps - dt_out) > CADENCE_RTOL * max(1.0, abs(dt_out)) * 10.0):
            raise AnalysisError("field history is not sampled at a uniform cadence")

    signal = (history - np.mean(history)) * hann(count, sym=False)[np.newaxis, :]

    # forward transform in x, inverse in t: exp(i(kx - wt)) lands at (+k, +w)
    transform = np.fft.ifft(np.fft.fft(signal, axis=0), axis=1) * count
    power = np.abs(transform) ** 2 / (grid.m1 * count)

    k = 2.0 * np.pi * np.fft.fftfreq(grid.m1, d=grid.dx)
    omega = 2.0 * np.pi * np.fft.fftfreq(count, d=dt_out)
    return Spectrum(
        k=np.fft.fftshift(k),
        omega=np.fft.fftshift(omega),
        power=np.fft.fftshift(power),
    )


def extract_branch_ridges(
    spectrum: Spectrum,
    floor_ratio: float = 1e-2,
    global_floor: float = 1e-10,
    max_jump: Optional[float] = None,
    min_points: int = 1,
) -> List[Branch]:
    """Group per-k local maxima in omega > 0 into branches.

    A column's peaks count when they exceed ``floor_ratio`` times that column's
    maximum and ``global_floor`` times the global maximum. A peak continues the
    branch whose last point lies in the previous resolved k column and within
    ``max_jump`` in omega (three omega bins by default); otherwise it starts a new
    branch. Branches with fewer than ``min_points`` points are dropped.

    Returns:
        Branches sorted by their mean frequency

    Raises:
        AnalysisError: No peak above the floor
    """
    power = spectrum.power
    peak_power = float(np.max(power, initial=0.0))
    if peak_power <= 0.0:
        raise AnalysisError("spectrum has no power")

    positive_w = spectrum.omega > 0.0
    omega = spectrum.omega[positive_w]
    d_omega = float(omega[1] - omega[0]) if omega.size > 1 else float(omega[0])
    max_jump = 3.0 * d_omega if max_jump is None else max_jump

    branches: List[Branch] = []
    last_column: List[int] = []
    column = -1
    for ik in np.flatnonzero(spectrum.k > 0.0):
        line = power[ik, positive_w]
        line_max = float(np.max(line))
        if line_max <= global_floor * peak_power:
            continue
        column += 1
        height = max(floor_ratio * line_max, global_floor * peak_power)
        # pad with zeros so peaks at the first or last bin are found
        peaks, _ = find_peaks(np.concatenate(([0.0], line, [0.0])), height=height)
        for idx in peaks - 1:
            w = float(omega[idx])
            match = None
            best = max_jump
            for b, branch in enumerate(branches):
                gap = abs(branch.omega[-1] - w)
                if last_column[b] == column - 1 and gap <= best:
                    match, best = b, gap
            if match is None:
                branches.append(Branch(k=[float(spectrum.k[ik])], omega=[w]))
                last_column.append(column)
            else:
                branches[match].k.append(float(spectrum.k[ik]))
                branches[match].omega.append(w)
                last_column[match] = column

    branches = [branch for branch in branches if len(branch.k) >= min_points]
    if not branches:
        raise AnalysisError("no spectral peaks above the floor")
    return sorted(branches, key=lambda branch: float(np.mean(branch.omega)))


def harmonic_proximity(branches: Sequence[Branch], cyclotron: float = 1.0, count: int = 3) -> List[float]:
    """Relative distance of the lowest ``count`` branches to n * cyclotron at their largest k.

    Raises:
        AnalysisError: Fewer than ``count`` branches
    """
    if len(branches) < count:
        raise AnalysisError(f"expected at least {count} branches, found {len(branches)}")
    out = []
    for n, branch in enumerate(branches[:count], start=1):
        _, w = branch.at_largest_k()
        out.append(abs(w - n * cyclotron) / (n * cyclotron))
    return out
