"""Conservation accounting, decay fits and dispersion analysis."""

from .conservation import conserved_quantities, relative_drift, thermal_energy
from .decay import DecayFit, fit_decay_rate
from .norms import l1_distance, state_l1_errors
from .spectrum import (
    Branch,
    Spectrum,
    extract_branch_ridges,
    harmonic_proximity,
    spacetime_spectrum,
)

__all__ = [
    "conserved_quantities",
    "relative_drift",
    "thermal_energy",
    "DecayFit",
    "fit_decay_rate",
    "l1_distance",
    "state_l1_errors",
    "Branch",
    "Spectrum",
    "extract_branch_ridges",
    "harmonic_proximity",
    "spacetime_spectrum",
]
