"""Run-directory repository: time series, binary snapshots, summary and config copy.

Layout of a run directory:
    config.cfg          flat configuration, re-parsable
    timeseries.csv      one row per output time
    summary.txt         key = value lines
    snapshots/          <field>_<index>.bin in the HVSL1 envelope
"""

import csv
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from shared.config import RunConfig, dump_config, get_settings
from shared.errors import OutputError
from shared.models.records import TIMESERIES_COLUMNS, ConservedSnapshot, RunSummary

MAGIC = "HVSL1"
CONFIG_FILE = "config.cfg"
TIMESERIES_FILE = "timeseries.csv"
SUMMARY_FILE = "summary.txt"
SNAPSHOT_DIR = "snapshots"
_DTYPE = np.dtype("<f8")


class Snapshot(BaseModel):
    """Decoded snapshot: name, time and the array in (M1, N1, N2) or (M1,) shape."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    time: float
    data: np.ndarray
    extras: Dict[str, str] = {}


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def write_snapshot(path: Path, data: np.ndarray, name: str, time: float, extras: Optional[Dict[str, str]] = None) -> Path:
    """Write ``HVSL1 <M1> <N1> <N2> <name> <time>`` and little-endian float64 values.

    1D fields are written with N1 = N2 = 1.

    Raises:
        OutputError: Unsupported shape or I/O failure
    """
    path = Path(path)
    array = np.ascontiguousarray(data, dtype=_DTYPE)
    if array.ndim == 1:
        dims = (array.shape[0], 1, 1)
    elif array.ndim == 3:
        dims = array.shape
    else:
        raise OutputError(f"cannot snapshot an array of shape {array.shape}", path=str(path))
    if not name or any(ch.isspace() for ch in name):
        raise OutputError(f"invalid field name '{name}'", path=str(path))

    tokens = [MAGIC, *(str(d) for d in dims), name, _fmt(time)]
    tokens += [f"{key}={value}" for key, value in (extras or {}).items()]
    try:
        with path.open("wb") as handle:
            handle.write((" ".join(tokens) + "\n").encode("ascii"))
            handle.write(array.tobytes(order="C"))
    except OSError as exc:
        raise OutputError(str(exc), path=str(path)) from exc
    return path


def read_snapshot(path: Path) -> Snapshot:
    """Read a snapshot written by ``write_snapshot``.

    Raises:
        OutputError: Missing file, bad header or truncated body
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise OutputError(str(exc), path=str(path)) from exc

    newline = raw.find(b"\n")
    if newline < 0:
        raise OutputError("missing snapshot header", path=str(path))
    tokens = raw[:newline].decode("ascii", errors="replace").split()
    if len(tokens) < 6 or tokens[0] != MAGIC:
        raise OutputError("not an HVSL1 snapshot", path=str(path))
    try:
        dims = tuple(int(token) for token in tokens[1:4])
        time = float(tokens[5])
    except ValueError as exc:
        raise OutputError(f"malformed header: {exc}", path=str(path)) from exc
    extras = dict(token.split("=", 1) for token in tokens[6:] if "=" in token)

    body = raw[newline + 1:]
    expected = int(np.prod(dims)) * _DTYPE.itemsize
    if len(body) != expected:
        raise OutputError(f"expected {expected} data bytes, found {len(body)}", path=str(path))
    data = np.frombuffer(body, dtype=_DTYPE).reshape(dims)
    if dims[1] == 1 and dims[2] == 1:
        data = data.reshape(dims[0])
    return Snapshot(name=tokens[4], time=time, data=data.copy(), extras=extras)


def write_spectrum(path: Path, k: np.ndarray, omega: np.ndarray, power: np.ndarray) -> Path:
    """Spectrum in the snapshot envelope; uniform axes go into the header as start:step."""
    grid = np.asarray(power, dtype=float)[:, :, np.newaxis]
    extras = {
        "k": f"{_fmt(k[0])}:{_fmt(k[1] - k[0])}",
        "omega": f"{_fmt(omega[0])}:{_fmt(omega[1] - omega[0])}",
    }
    return write_snapshot(path, grid, "spectrum", 0.0, extras)


def read_spectrum(path: Path) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Inverse of ``write_spectrum``: (k, omega, power)."""
    snap = read_snapshot(path)
    try:
        k0, dk = (float(v) for v in snap.extras["k"].split(":"))
        w0, dw = (float(v) for v in snap.extras["omega"].split(":"))
    except (KeyError, ValueError) as exc:
        raise OutputError("spectrum header lacks axes", path=str(path)) from exc
    power = snap.data.reshape(snap.data.shape[0], -1)
    return k0 + dk * np.arange(power.shape[0]), w0 + dw * np.arange(power.shape[1]), power


def resolve_output_dir(directory: Path) -> Path:
    """Relative run directories resolve against the configured output root."""
    directory = Path(directory)
    if directory.is_absolute():
        return directory
    return get_settings().output_root / directory


class RunRepository:
    """Repository for the artifacts of one run directory."""

    def __init__(self, directory: Path):
        self.directory = Path(directory)
        self.snapshot_dir = self.directory / SNAPSHOT_DIR

    @property
    def timeseries_path(self) -> Path:
        return self.directory / TIMESERIES_FILE

    def prepare(self) -> None:
        """Create the directory tree and start a fresh time series."""
        try:
            self.snapshot_dir.mkdir(parents=True, exist_ok=True)
            with self.timeseries_path.open("w", newline="") as handle:
                csv.writer(handle).writerow(TIMESERIES_COLUMNS)
        except OSError as exc:
            raise OutputError(str(exc), path=str(self.directory)) from exc

    def write_config(self, config: RunConfig) -> Path:
        path = self.directory / CONFIG_FILE
        try:
            path.write_text(dump_config(config), encoding="utf-8")
        except OSError as exc:
            raise OutputError(str(exc), path=str(path)) from exc
        return path

    def append_timeseries(self, rows: Iterable[ConservedSnapshot]) -> None:
        """Append rows with 17 significant digits."""
        try:
            with self.timeseries_path.open("a", newline="") as handle:
                writer = csv.writer(handle)
                for row in rows:
                    writer.writerow([_fmt(value) for value in row.as_row()])
        except OSError as exc:
            raise OutputError(str(exc), path=str(self.timeseries_path)) from exc

    def write_timeseries(self, rows: Iterable[ConservedSnapshot]) -> Path:
        """Rewrite the whole time series."""
        self.prepare()
        self.append_timeseries(rows)
        return self.timeseries_path

    def read_timeseries(self) -> Dict[str, np.ndarray]:
        """Columns of the time series keyed by header name."""
        try:
            with self.timeseries_path.open(newline="") as handle:
                reader = csv.reader(handle)
                header = next(reader)
                rows = [[float(value) for value in row] for row in reader if row]
        except (OSError, StopIteration, ValueError) as exc:
            raise OutputError(f"cannot read time series: {exc}", path=str(self.timeseries_path)) from exc
        if tuple(header) != TIMESERIES_COLUMNS:
            raise OutputError("unexpected time-series header", path=str(self.timeseries_path))
        table = np.asarray(rows, dtype=float).reshape(len(rows), len(header))
        return {name: table[:, idx] for idx, name in enumerate(header)}

    def snapshot_path(self, field: str, index: int) -> Path:
        return self.snapshot_dir / f"{field}_{index:06d}.bin"

    def write_snapshot(self, field: str, index: int, data: np.ndarray, time: float) -> Path:
        return write_snapshot(self.snapshot_path(field, index), data, field, time)

    def list_snapshots(self, field: str) -> List[Path]:
        return sorted(self.snapshot_dir.glob(f"{field}_*.bin"))

    def read_field_history(self, field: str) -> Tuple[np.ndarray, np.ndarray]:
        """Stack the 1D snapshots of ``field`` into (times, history of shape (M1, T)).

        Raises:
            OutputError: No snapshots of that field
        """
        paths = self.list_snapshots(field)
        if not paths:
            raise OutputError(f"no '{field}' snapshots", path=str(self.snapshot_dir))
        snaps = [read_snapshot(path) for path in paths]
        times = np.array([snap.time for snap in snaps])
        return times, np.stack([snap.data for snap in snaps], axis=1)

    def write_summary(self, summary: RunSummary) -> Path:
        """Write the summary as ``key = value`` lines."""
        path = self.directory / SUMMARY_FILE
        lines = []
        for key, value in summary.model_dump(mode="json", exclude={"extra"}).items():
            if value is None:
                continue
            lines.append(f"{key} = {_fmt(value) if isinstance(value, float) else value}")
        for key, value in summary.extra.items():
            lines.append(f"{key} = {_fmt(value)}")
        lines.append(f"exit_status = {summary.exit_status}")
        try:
            path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        except OSError as exc:
            raise OutputError(str(exc), path=str(path)) from exc
        return path

    def read_summary(self) -> Dict[str, str]:
        path = self.directory / SUMMARY_FILE
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise OutputError(str(exc), path=str(path)) from exc
        return dict(
            (part.strip() for part in line.split("=", 1)) for line in text.splitlines() if "=" in line
        )


def get_run_repository(directory: Path) -> RunRepository:
    """Repository for ``directory`` resolved against the output root."""
    return RunRepository(resolve_output_dir(directory))
