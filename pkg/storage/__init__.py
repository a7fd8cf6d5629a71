"""Run artifacts on disk."""

from .repository import (
    RunRepository,
    Snapshot,
    get_run_repository,
    read_snapshot,
    read_spectrum,
    resolve_output_dir,
    write_snapshot,
    write_spectrum,
)

__all__ = [
    "RunRepository",
    "Snapshot",
    "get_run_repository",
    "read_snapshot",
    "read_spectrum",
    "resolve_output_dir",
    "write_snapshot",
    "write_spectrum",
]
