"""Shared data models."""

from .grid import PhaseGrid, make_phase_grid, frequency_of, angular_frequencies
from .state import (
    Distribution,
    FieldState,
    Moments,
    SimulationState,
    compute_moments,
    curl_term,
)
from .records import (
    TIMESERIES_COLUMNS,
    ConservedSnapshot,
    PvbResult,
    RunStatus,
    RunSummary,
)

__all__ = [
    "PhaseGrid",
    "make_phase_grid",
    "frequency_of",
    "angular_frequencies",
    "Distribution",
    "FieldState",
    "Moments",
    "SimulationState",
    "compute_moments",
    "curl_term",
    "TIMESERIES_COLUMNS",
    "ConservedSnapshot",
    "PvbResult",
    "RunStatus",
    "RunSummary",
]
