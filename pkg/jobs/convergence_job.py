"""
Convergence Job: time-step convergence study against a fine-step reference.

For every dt the configuration is integrated to t_final and compared in l1 with
a reference run at --reference-dt (0.001 by default). Observed orders are
log(e(dt_a) / e(dt_b)) / log(dt_a / dt_b) for consecutive step sizes.

Output layout:
    <output_dir>/
        convergence.csv     dt, err_f, err_b3, err_p, order_f, order_b3, order_p

Usage:
    hybridsl convergence convergence --dts 0.1 0.05 0.025 0.0125 0.00625
    hybridsl convergence my.cfg --dts 0.025 0.0125 --check
"""

import argparse
import csv
import math
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from pydantic import BaseModel, Field

from diagnostics.norms import state_l1_errors
from observability.logging import get_logger
from shared.config import RunConfig
from shared.errors import AcceptanceError, OutputError
from solvers import advance
from storage.repository import resolve_output_dir
from .common import prepare, resolve_config, with_dt

logger = get_logger(__name__)

QUANTITIES = ("f", "b3", "p")

# ── Acceptance window ─────────────────────────────────────────────────────────

# Orders are checked only between step sizes at or below this value
CHECK_BELOW_DT = 0.025
MIN_ORDER = 1.85
MAX_ORDER = 2.1


class ConvergenceRow(BaseModel):
    dt: float
    errors: Dict[str, float]
    orders: Dict[str, Optional[float]] = Field(default_factory=dict)


class ConvergenceReport(BaseModel):
    reference_dt: float
    rows: List[ConvergenceRow]


def convergence_study(
    config: RunConfig, dts: Sequence[float], reference_dt: float = 0.001
) -> ConvergenceReport:
    """l1 errors of (f, B3, p) at t_final for each dt, plus observed orders."""
    reference_config = with_dt(config, reference_dt)
    steps_ref = reference_config.numerics.n_steps
    scheme, state0 = prepare(reference_config)
    logger.info("reference_run_started", dt=reference_dt, steps=steps_ref)
    reference = advance(scheme, state0, reference_dt, steps_ref)

    rows: List[ConvergenceRow] = []
    for dt in sorted(dts, reverse=True):
        cfg = with_dt(config, dt)
        scheme, state0 = prepare(cfg)
        final = advance(scheme, state0, dt, cfg.numerics.n_steps)
        rows.append(ConvergenceRow(dt=dt, errors=state_l1_errors(final, reference)))
        logger.info("convergence_point", dt=dt, **rows[-1].errors)

    for coarse, fine in zip(rows, rows[1:]):
        ratio = math.log(coarse.dt / fine.dt)
        fine.orders = {
            name: (
                math.log(coarse.errors[name] / fine.errors[name]) / ratio
                if coarse.errors[name] > 0.0 and fine.errors[name] > 0.0
                else None
            )
            for name in QUANTITIES
        }
    return ConvergenceReport(reference_dt=reference_dt, rows=rows)


def check_report(report: ConvergenceReport) -> None:
    """Errors decrease with dt; orders at small dt stay in [MIN_ORDER, MAX_ORDER].

    Raises:
        AcceptanceError: On the first violated criterion
    """
    for coarse, fine in zip(report.rows, report.rows[1:]):
        for name in QUANTITIES:
            if not fine.errors[name] < coarse.errors[name]:
                raise AcceptanceError(f"{name} error does not decrease from dt={coarse.dt} to dt={fine.dt}")
            if coarse.dt <= CHECK_BELOW_DT * (1.0 + 1e-12):
                order = fine.orders.get(name)
                if order is None or not MIN_ORDER <= order <= MAX_ORDER:
                    raise AcceptanceError(
                        f"{name} order {order} between dt={coarse.dt} and dt={fine.dt} "
                        f"outside [{MIN_ORDER}, {MAX_ORDER}]"
                    )


def write_report(report: ConvergenceReport, directory: Path) -> Path:
    path = Path(directory) / "convergence.csv"
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["dt", *(f"err_{q}" for q in QUANTITIES), *(f"order_{q}" for q in QUANTITIES)])
            for row in report.rows:
                orders = [row.orders.get(q) for q in QUANTITIES]
                writer.writerow(
                    [format(row.dt, ".17g")]
                    + [format(row.errors[q], ".17g") for q in QUANTITIES]
                    + ["" if o is None else format(o, ".6f") for o in orders]
                )
    except OSError as exc:
        raise OutputError(str(exc), path=str(path)) from exc
    return path


# ── CLI ───────────────────────────────────────────────────────────────────────

def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("config", help="Config file or preset name")
    parser.add_argument("--dts", type=float, nargs="+", required=True, help="Step sizes to compare")
    parser.add_argument("--reference-dt", type=float, default=0.001, help="Reference step (default: 0.001)")
    parser.add_argument("--output", type=Path, default=None, help="Directory for convergence.csv")
    parser.add_argument("--check", action="store_true", help="Exit 4 when orders fall outside the window")


def execute(args: argparse.Namespace) -> int:
    config = resolve_config(args.config)
    report = convergence_study(config, args.dts, args.reference_dt)
    directory = args.output or resolve_output_dir(config.output.directory)
    path = write_report(report, directory)

    print(f"[CONVERGENCE] Reference dt={report.reference_dt:g}")
    print(f"{'dt':>10} {'err f':>12} {'err B3':>12} {'err p':>12} {'ord f':>7} {'ord B3':>7} {'ord p':>7}")
    for row in report.rows:
        orders = ["" if row.orders.get(q) is None else f"{row.orders[q]:.2f}" for q in QUANTITIES]
        print(
            f"{row.dt:>10g} {row.errors['f']:>12.3e} {row.errors['b3']:>12.3e} {row.errors['p']:>12.3e} "
            f"{orders[0]:>7} {orders[1]:>7} {orders[2]:>7}"
        )
    print(f"[CONVERGENCE] Table: {path}")

    if args.check:
        check_report(report)
    return 0


def main() -> int:
    parser = argparse.ArgumentParser(description="hybridsl convergence study")
    add_arguments(parser)
    return execute(parser.parse_args())


if __name__ == "__main__":
    raise SystemExit(main())
