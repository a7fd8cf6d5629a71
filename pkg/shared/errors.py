"""Exception hierarchy shared by the simulator, harnesses and CLI."""

from typing import Optional


class SimulationError(Exception):
    """Base exception for simulator errors.

    Every subclass carries the process exit code the CLI reports for it.
    """

    exit_code = 3


class ConfigurationError(SimulationError):
    """Raised when a run configuration or grid description is invalid."""

    exit_code = 2

    def __init__(self, message: str, key_path: Optional[str] = None):
        self.key_path = key_path
        super().__init__(f"{key_path}: {message}" if key_path else message)


class KernelError(SimulationError):
    """Raised when an advection kernel receives an unsupported line."""

    pass


class StateError(SimulationError):
    """Raised when the discrete state violates a physical requirement (e.g. rho <= 0)."""

    pass


class StepSizeError(SimulationError):
    """Raised when dt*|B| hits a resonance of the averaging matrix."""

    pass


class PicardConvergenceError(SimulationError):
    """Raised when the field Picard iteration does not reach its tolerance."""

    def __init__(self, message: str, residual: float, iterations: int):
        self.residual = residual
        self.iterations = iterations
        super().__init__(message)


class AnalysisError(SimulationError):
    """Raised by post-processing (decay fits, spectra, ridges)."""

    pass


class AcceptanceError(SimulationError):
    """Raised by a harness when a configured acceptance check fails."""

    exit_code = 4


class OutputError(SimulationError):
    """Raised when run artifacts cannot be read or written."""

    def __init__(self, message: str, path: str):
        self.path = path
        super().__init__(f"{path}: {message}")
