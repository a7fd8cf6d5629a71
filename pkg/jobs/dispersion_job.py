"""
Dispersion Job: space-time spectrum of the B3 history of a finished run.

Reads <run_dir>/config.cfg and <run_dir>/snapshots/b3_*.bin, and writes:
    <run_dir>/
        spectrum.bin    power over (k, omega) in the HVSL1 envelope
        ridges.csv      branch, k, omega
and prints how close the three lowest branches come to the cyclotron
harmonics at their largest resolved k.

Usage:
    hybridsl run bernstein
    hybridsl dispersion runs/bernstein --check
"""

import argparse
import csv
from pathlib import Path
from typing import List

import numpy as np

from diagnostics.spectrum import (
    Branch,
    extract_branch_ridges,
    harmonic_proximity,
    spacetime_spectrum,
)
from observability.logging import get_logger
from shared.config import load_config
from shared.errors import AcceptanceError, AnalysisError, OutputError
from shared.models.grid import make_phase_grid
from storage.repository import CONFIG_FILE, RunRepository, write_spectrum

logger = get_logger(__name__)

HARMONIC_TOLERANCE = 0.15


def write_ridges(branches: List[Branch], path: Path) -> Path:
    try:
        with path.open("w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["branch", "k", "omega"])
            for index, branch in enumerate(branches):
                for k, omega in zip(branch.k, branch.omega):
                    writer.writerow([index, format(k, ".17g"), format(omega, ".17g")])
    except OSError as exc:
        raise OutputError(str(exc), path=str(path)) from exc
    return path


def analyze_run(run_dir: Path, floor_ratio: float = 1e-2, min_points: int = 3):
    """Spectrum and branches of a run directory's B3 history.

    Raises:
        OutputError: Missing config or snapshots
        AnalysisError: Too few samples, non-uniform cadence or no peaks
    """
    repository = RunRepository(run_dir)
    config = load_config(Path(run_dir) / CONFIG_FILE)
    grid = make_phase_grid(config)

    times, history = repository.read_field_history("b3")
    if times.size < 2:
        raise AnalysisError("need at least two B3 snapshots")
    dt_out = float(times[1] - times[0])
    spectrum = spacetime_spectrum(history, dt_out, grid, times=times)
    branches = extract_branch_ridges(spectrum, floor_ratio=floor_ratio, min_points=min_points)

    write_spectrum(Path(run_dir) / "spectrum.bin", spectrum.k, spectrum.omega, spectrum.power)
    write_ridges(branches, Path(run_dir) / "ridges.csv")
    logger.info("dispersion_analyzed", run_dir=str(run_dir), samples=int(times.size), branches=len(branches))
    return spectrum, branches, float(np.mean(np.abs(history[:, 0])))


# ── CLI ───────────────────────────────────────────────────────────────────────

def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("run_dir", type=Path, help="Directory of a finished run with B3 snapshots")
    parser.add_argument("--floor", type=float, default=1e-2, help="Peak floor relative to each k column")
    parser.add_argument("--min-points", type=int, default=3, help="Shortest branch kept")
    parser.add_argument("--check", action="store_true", help="Exit 4 when branches miss the harmonics")


def execute(args: argparse.Namespace) -> int:
    _, branches, cyclotron = analyze_run(args.run_dir, args.floor, args.min_points)

    print(f"[DISPERSION] {len(branches)} branches, cyclotron frequency {cyclotron:.4f}")
    for index, branch in enumerate(branches[:6]):
        k, omega = branch.at_largest_k()
        print(f"[DISPERSION] branch {index}: {len(branch.k)} points, omega={omega:.4f} at k={k:.4f}")

    if args.check:
        distances = harmonic_proximity(branches, cyclotron=cyclotron, count=3)
        for n, distance in enumerate(distances, start=1):
            print(f"[DISPERSION] harmonic {n}: relative distance {distance:.3f}")
            if distance > HARMONIC_TOLERANCE:
                raise AcceptanceError(
                    f"branch {n} ends {distance:.1%} away from harmonic {n} (limit {HARMONIC_TOLERANCE:.0%})"
                )
    return 0


def main() -> int:
    parser = argparse.ArgumentParser(description="hybridsl dispersion analysis")
    add_arguments(parser)
    return execute(parser.parse_args())


if __name__ == "__main__":
    raise SystemExit(main())
