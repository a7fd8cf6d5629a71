"""
hybridsl command line.

Subcommands:
    run <config>                          one simulation
    convergence <config> --dts ...        time-step convergence table
    reversibility <config> --steps n      forward/backward return errors
    dispersion <run-dir>                  spectrum and ridge report

<config> is a flat config file or a preset name. Exit codes: 0 success,
2 configuration error, 3 numerical failure, 4 acceptance violation.
"""

import argparse
import sys
from typing import List, Optional

from observability.logging import get_logger, init_logging
from shared.errors import SimulationError
from . import convergence_job, dispersion_job, reversibility_job, run_job

logger = get_logger(__name__)

JOBS = {
    "run": run_job,
    "convergence": convergence_job,
    "reversibility": reversibility_job,
    "dispersion": dispersion_job,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hybridsl", description="Semi-Lagrangian hybrid plasma simulator")
    commands = parser.add_subparsers(dest="command", required=True)
    for name, job in JOBS.items():
        sub = commands.add_parser(name, help=(job.__doc__ or "").strip().splitlines()[0])
        job.add_arguments(sub)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    init_logging()
    try:
        return JOBS[args.command].execute(args)
    except SimulationError as exc:
        logger.error("job_failed", command=args.command, error=str(exc), exit_code=exc.exit_code)
        print(f"[ERROR] {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
