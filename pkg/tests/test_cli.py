"""Command-line entry points and their exit codes."""

import numpy as np
import pytest

from jobs import cli
from jobs.convergence_job import ConvergenceReport, ConvergenceRow, check_report as check_convergence
from jobs.reversibility_job import ReversibilityReport, check_report as check_reversibility
from shared.config import dump_config
from shared.errors import AcceptanceError
from shared.models.grid import make_phase_grid
from storage import RunRepository, read_spectrum


@pytest.fixture
def tiny_file(tmp_path, tiny_config):
    path = tmp_path / "tiny.cfg"
    path.write_text(dump_config(tiny_config), encoding="utf-8")
    return path


def test_run_command_succeeds(tiny_file, tiny_config, capsys):
    assert cli.main(["run", str(tiny_file)]) == 0
    assert "[RUN] tiny: 4 steps" in capsys.readouterr().out
    assert (tiny_config.output.directory / "summary.txt").is_file()


def test_run_command_honours_output_override(tiny_file, tmp_path):
    assert cli.main(["run", str(tiny_file), "--output", str(tmp_path / "elsewhere")]) == 0
    assert (tmp_path / "elsewhere" / "timeseries.csv").is_file()


def test_invalid_config_exits_with_two(tmp_path, capsys):
    path = tmp_path / "bad.cfg"
    path.write_text("preset = landau\ngrid.m1 = three\n", encoding="utf-8")
    assert cli.main(["run", str(path)]) == 2
    assert "grid.m1" in capsys.readouterr().err


def test_unknown_source_exits_with_two():
    assert cli.main(["run", "no_such_preset_or_file"]) == 2


def test_picard_failure_exits_with_three(tmp_path, tiny_config):
    path = tmp_path / "strict.cfg"
    text = dump_config(tiny_config).replace("numerics.picard_max = 200", "numerics.picard_max = 1")
    path.write_text(text, encoding="utf-8")
    assert cli.main(["run", str(path)]) == 3


def test_reversibility_command(tiny_file, tmp_path, capsys):
    out = tmp_path / "rev"
    assert cli.main(["reversibility", str(tiny_file), "--steps", "1", "--output", str(out)]) == 0
    report = (out / "reversibility.txt").read_text()
    assert "err_f = " in report
    assert "[REVERSIBILITY]" in capsys.readouterr().out


def test_convergence_command_writes_table(tiny_file, tmp_path):
    out = tmp_path / "conv"
    argv = ["convergence", str(tiny_file), "--dts", "0.025", "0.0125", "--reference-dt", "0.00625",
            "--output", str(out)]
    assert cli.main(argv) == 0
    lines = (out / "convergence.csv").read_text().splitlines()
    assert lines[0] == "dt,err_f,err_b3,err_p,order_f,order_b3,order_p"
    assert len(lines) == 3


def test_dispersion_on_missing_directory_exits_with_two(tmp_path):
    assert cli.main(["dispersion", str(tmp_path / "nothing")]) == 2


def test_dispersion_command_on_synthetic_history(tmp_path, tiny_config):
    run_dir = tmp_path / "wave"
    repo = RunRepository(run_dir)
    repo.prepare()
    repo.write_config(tiny_config)
    grid = make_phase_grid(tiny_config)
    for n in range(64):
        t = 0.1 * n
        repo.write_snapshot("b3", n, 1.0 + 1e-3 * np.cos(2.0 * grid.x_nodes - 1.1 * t), t)

    assert cli.main(["dispersion", str(run_dir), "--min-points", "1"]) == 0
    k, omega, power = read_spectrum(run_dir / "spectrum.bin")
    assert power.shape == (grid.m1, 64)
    assert k.size == grid.m1
    assert (run_dir / "ridges.csv").read_text().splitlines()[0] == "branch,k,omega"


def test_convergence_check_rejects_growing_errors():
    report = ConvergenceReport(
        reference_dt=0.001,
        rows=[
            ConvergenceRow(dt=0.025, errors={"f": 1e-6, "b3": 1e-7, "p": 1e-7}),
            ConvergenceRow(dt=0.0125, errors={"f": 2e-6, "b3": 2.5e-8, "p": 2.5e-8},
                           orders={"f": -1.0, "b3": 2.0, "p": 2.0}),
        ],
    )
    with pytest.raises(AcceptanceError):
        check_convergence(report)


def test_convergence_check_accepts_second_order():
    report = ConvergenceReport(
        reference_dt=0.001,
        rows=[
            ConvergenceRow(dt=0.025, errors={"f": 4e-6, "b3": 4e-8, "p": 4e-8}),
            ConvergenceRow(dt=0.0125, errors={"f": 1e-6, "b3": 1e-8, "p": 1e-8},
                           orders={"f": 2.0, "b3": 2.0, "p": 2.0}),
        ],
    )
    check_convergence(report)


def test_reversibility_check_thresholds():
    passing = ReversibilityReport(dt=0.1, steps=20, errors={"f": 1e-9, "b3": 1e-12, "p": 1e-12},
                                  max_picard_forward=9, max_picard_backward=9)
    check_reversibility(passing)
    failing = passing.model_copy(update={"errors": {"f": 1e-6, "b3": 1e-12, "p": 1e-12}})
    with pytest.raises(AcceptanceError):
        check_reversibility(failing)
