"""
Run Job: one simulation from a configuration file or preset.

Writes into the run directory (relative directories resolve against HVSL_OUTPUT_ROOT):
    config.cfg        persisted configuration
    timeseries.csv    t,mass,p1,p2,e_kin,e_mag,e_prs,e_tot,rho_dev,p_rel_err,picard_iters
    summary.txt       max drifts, Picard statistics, exit status
    snapshots/        b3_*.bin, p_*.bin, f_*.bin

Usage:
    hybridsl run landau
    hybridsl run my_run.cfg --output runs/my_run
"""

import argparse
from pathlib import Path

from solvers import run
from .common import resolve_config


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("config", help="Config file or preset name")
    parser.add_argument("--output", type=Path, default=None, help="Run directory override")


def execute(args: argparse.Namespace) -> int:
    config = resolve_config(args.config)
    artifacts = run(config, args.output)
    summary = artifacts.summary

    print(f"[RUN] {config.name}: {summary.steps_completed} steps to t={summary.final_time:g}")
    print(f"[RUN] Output: {artifacts.directory}")
    print(
        f"[RUN] Max drifts: mass {summary.max_mass_drift:.3e} | "
        f"p1 {summary.max_momentum1_drift:.3e} | energy {summary.max_energy_drift:.3e}"
    )
    if summary.max_p_relation_err is not None:
        print(f"[RUN] Max |p - kappa rho^gamma|_1: {summary.max_p_relation_err:.3e}")
    print(f"[RUN] Max Picard iterations: {summary.max_picard_iterations}")
    return summary.exit_status


def main() -> int:
    parser = argparse.ArgumentParser(description="hybridsl single run")
    add_arguments(parser)
    return execute(parser.parse_args())


if __name__ == "__main__":
    raise SystemExit(main())
