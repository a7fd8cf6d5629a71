"""
Reversibility Job: n steps forward at +dt, n steps back at -dt, compare with the start.

With all-spectral advection backends the composed scheme returns to the
initial state up to the Picard tolerance; spline backends do not.

Output layout:
    <output_dir>/
        reversibility.txt   key = value report

Usage:
    hybridsl reversibility reversibility --steps 20 --dt 0.1
    hybridsl reversibility my.cfg --steps 20 --check
"""

import argparse
from pathlib import Path
from typing import Dict, Optional

from pydantic import BaseModel

from diagnostics.norms import state_l1_errors
from observability.logging import get_logger
from shared.config import RunConfig
from shared.errors import AcceptanceError, OutputError
from storage.repository import resolve_output_dir
from .common import prepare, resolve_config

logger = get_logger(__name__)

# ── Acceptance thresholds (l1) ────────────────────────────────────────────────

THRESHOLDS = {"f": 1e-8, "b3": 1e-11, "p": 1e-11}


class ReversibilityReport(BaseModel):
    dt: float
    steps: int
    errors: Dict[str, float]
    max_picard_forward: int
    max_picard_backward: int


def reversibility_study(config: RunConfig, steps: int, dt: Optional[float] = None) -> ReversibilityReport:
    """Run ``steps`` steps at +dt then ``steps`` at -dt and measure the return error."""
    dt = dt if dt is not None else config.numerics.dt
    scheme, start = prepare(config)

    state = start
    forward = backward = 0
    for _ in range(steps):
        outcome = scheme.step(state, dt)
        state, forward = outcome.state, max(forward, outcome.picard_iterations)
    for _ in range(steps):
        outcome = scheme.step(state, -dt)
        state, backward = outcome.state, max(backward, outcome.picard_iterations)

    errors = state_l1_errors(state, start)
    logger.info("reversibility_done", dt=dt, steps=steps, **errors)
    return ReversibilityReport(
        dt=dt, steps=steps, errors=errors, max_picard_forward=forward, max_picard_backward=backward
    )


def check_report(report: ReversibilityReport) -> None:
    """Raises AcceptanceError when any l1 error exceeds its threshold."""
    for name, limit in THRESHOLDS.items():
        if not report.errors[name] <= limit:
            raise AcceptanceError(f"{name} returns with l1 error {report.errors[name]:.3e} > {limit:.0e}")


def write_report(report: ReversibilityReport, directory: Path) -> Path:
    path = Path(directory) / "reversibility.txt"
    lines = [f"dt = {report.dt!r}", f"steps = {report.steps}"]
    lines += [f"err_{name} = {value:.17g}" for name, value in report.errors.items()]
    lines += [
        f"max_picard_forward = {report.max_picard_forward}",
        f"max_picard_backward = {report.max_picard_backward}",
    ]
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as exc:
        raise OutputError(str(exc), path=str(path)) from exc
    return path


# ── CLI ───────────────────────────────────────────────────────────────────────

def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("config", help="Config file or preset name")
    parser.add_argument("--steps", type=int, default=20, help="Steps in each direction (default: 20)")
    parser.add_argument("--dt", type=float, default=None, help="Step size (default: config dt)")
    parser.add_argument("--output", type=Path, default=None, help="Directory for the report")
    parser.add_argument("--check", action="store_true", help="Exit 4 when errors exceed thresholds")


def execute(args: argparse.Namespace) -> int:
    config = resolve_config(args.config)
    report = reversibility_study(config, args.steps, args.dt)
    path = write_report(report, args.output or resolve_output_dir(config.output.directory))

    print(f"[REVERSIBILITY] {report.steps} steps forward and back at dt={report.dt:g}")
    print(
        f"[REVERSIBILITY] l1 errors: f {report.errors['f']:.3e} | "
        f"B3 {report.errors['b3']:.3e} | p {report.errors['p']:.3e}"
    )
    print(
        f"[REVERSIBILITY] Max Picard iterations: forward {report.max_picard_forward} | "
        f"backward {report.max_picard_backward}"
    )
    print(f"[REVERSIBILITY] Report: {path}")

    if args.check:
        check_report(report)
    return 0


def main() -> int:
    parser = argparse.ArgumentParser(description="hybridsl reversibility test")
    add_arguments(parser)
    return execute(parser.parse_args())


if __name__ == "__main__":
    raise SystemExit(main())
