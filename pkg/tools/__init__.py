"""Numerical tools: advection kernels, spectral derivatives, exact splitting algebra."""

from .interp import (
    AdvectionTool,
    SplineAdvectionTool,
    SpectralAdvectionTool,
    SplineCoefficients,
    get_advection_tool,
    spline_coefficients_periodic,
    spline_evaluate,
    advect_line_spline,
    advect_line_spectral,
)
from .spectral import spectral_derivative
from .exact_split import (
    PvbFrozenPoint,
    decompose_pressure,
    rotation_matrix,
    averaging_matrix,
    compute_u_bar,
    rotation_shears,
)

__all__ = [
    "AdvectionTool",
    "SplineAdvectionTool",
    "SpectralAdvectionTool",
    "SplineCoefficients",
    "get_advection_tool",
    "spline_coefficients_periodic",
    "spline_evaluate",
    "advect_line_spline",
    "advect_line_spectral",
    "spectral_derivative",
    "PvbFrozenPoint",
    "decompose_pressure",
    "rotation_matrix",
    "averaging_matrix",
    "compute_u_bar",
    "rotation_shears",
]
