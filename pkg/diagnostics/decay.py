"""Exponential decay-rate fits of positive time series."""

from typing import Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel
from scipy.signal import find_peaks

from shared.errors import AnalysisError


class DecayFit(BaseModel):
    """Least-squares fit log(value) = intercept + rate * t."""

    rate: float
    intercept: float
    r_squared: float
    points: int


def fit_decay_rate(
    times: Sequence[float],
    values: Sequence[float],
    window: Optional[Tuple[float, float]] = None,
    peaks_only: bool = False,
) -> DecayFit:
    """Fit an exponential rate to ``values`` over a time window.

    Args:
        times: Sample times
        values: Samples, positive inside the window
        window: Closed interval (t_start, t_end); the whole series when omitted
        peaks_only: Fit only the local maxima in the window (oscillating envelopes)

    Returns:
        DecayFit with the slope of log(value) and its R^2

    Raises:
        AnalysisError: Non-positive values or fewer than two points in the window
    """
    t = np.asarray(times, dtype=float)
    y = np.asarray(values, dtype=float)
    if t.shape != y.shape:
        raise AnalysisError("times and values differ in length")

    if window is not None:
        inside = (t >= window[0]) & (t <= window[1])
        t, y = t[inside], y[inside]
    if peaks_only:
        peaks, _ = find_peaks(y)
        t, y = t[peaks], y[peaks]

    if t.size < 2:
        raise AnalysisError(f"need at least two points to fit a rate, got {t.size}")
    if np.any(~(y > 0.0)):
        raise AnalysisError("values must be positive inside the fit window")

    log_y = np.log(y)
    rate, intercept = np.polyfit(t, log_y, 1)
    residual = log_y - (intercept + rate * t)
    total = np.sum((log_y - np.mean(log_y)) ** 2)
    ss_res = float(np.sum(residual * residual))
    r_squared = 1.0 if np.ptp(log_y) == 0.0 else 1.0 - ss_res / float(total)

    return DecayFit(rate=float(rate), intercept=float(intercept), r_squared=r_squared, points=int(t.size))
