"""Time series of observable snapshots and their on-disk forms."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .ioutil import atomic_write_text, fmt
from .observables import ObservableSnapshot
from .state import FieldState

TIMESERIES_CSV_HEADER = (
    "step,m_total,drift_velocity,momentum_expectation,"
    "position_mean,position_spread,shape_residual"
)
_COLUMNS = TIMESERIES_CSV_HEADER.split(",")


@dataclass(frozen=True)
class TimeSeries:
    """Snapshots in step order (first one at step 0), plus optional
    full-state checkpoints keyed by step."""

    snapshots: tuple[ObservableSnapshot, ...]
    checkpoints: dict[int, FieldState] = field(default_factory=dict)

    def __post_init__(self):
        steps = [snap.step for snap in self.snapshots]
        if steps and steps[0] != 0:
            raise ValueError("a time series starts at step 0")
        if any(b <= a for a, b in zip(steps, steps[1:])):
            raise ValueError("snapshot steps must be strictly increasing")

    def column(self, name: str):
        """All values of one snapshot field, in step order."""
        return [getattr(snap, name) for snap in self.snapshots]

    def to_csv_text(self) -> str:
        lines = [TIMESERIES_CSV_HEADER]
        for snap in self.snapshots:
            lines.append(
                ",".join(
                    [str(snap.step)] + [fmt(getattr(snap, col)) for col in _COLUMNS[1:]]
                )
            )
        return "\n".join(lines) + "\n"

    def write_csv(self, path: str) -> None:
        atomic_write_text(path, self.to_csv_text())

    def to_json_obj(self) -> dict:
        return {
            "columns": _COLUMNS,
            "rows": [
                [snap.step] + [float(getattr(snap, col)) for col in _COLUMNS[1:]]
                for snap in self.snapshots
            ],
        }

    def write_json(self, path: str) -> None:
        atomic_write_text(path, json.dumps(self.to_json_obj(), indent=1) + "\n")


def read_timeseries_csv(path: str) -> list[ObservableSnapshot]:
    """Parse a time-series CSV back into snapshots."""
    with open(path) as handle:
        lines = [ln.strip() for ln in handle if ln.strip()]
    if not lines or lines[0] != TIMESERIES_CSV_HEADER:
        raise ValueError(f"{path}: expected header {TIMESERIES_CSV_HEADER!r}")
    out = []
    for line in lines[1:]:
        parts = line.split(",")
        kwargs = {"step": int(parts[0])}
        for name, text in zip(_COLUMNS[1:], parts[1:]):
            kwargs[name] = float(text)
        out.append(ObservableSnapshot(**kwargs))
    return out
