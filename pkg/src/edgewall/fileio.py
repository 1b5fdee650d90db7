"""Deterministic CSV/JSON serialization for grids, profiles, and run records.

Floats are written with 17 significant digits, which round-trips IEEE doubles
exactly; JSON keys are sorted so identical runs produce byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .energy import Profile
from .errors import ProfileParseError
from .grid import Grid


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def write_profile_csv(p: Profile, path: str) -> None:
    """Write "x,theta" rows at full precision; read_profile_csv inverts exactly."""
    lines = ["x,theta"]
    for x, t in zip(p.grid.nodes, p.theta):
        lines.append(f"{_fmt(x)},{_fmt(t)}")
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


def read_profile_csv(path: str) -> Profile:
    """Read a profile written by write_profile_csv.

    The edge value beta is the first theta sample (the flow clamps it there).
    Malformed rows, non-monotone x, or a first node away from 0 raise
    ProfileParseError carrying the line number.
    """
    xs: list = []
    thetas: list = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if lineno == 1:
                if line != "x,theta":
                    raise ProfileParseError(
                        f"expected header 'x,theta', got {line!r}", lineno
                    )
                continue
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise ProfileParseError(
                    f"expected two comma-separated fields, got {line!r}", lineno
                )
            try:
                x = float(parts[0])
                t = float(parts[1])
            except ValueError:
                raise ProfileParseError(f"non-numeric field in {line!r}", lineno) from None
            if xs and not x > xs[-1]:
                raise ProfileParseError(
                    f"x column must increase strictly; {x!r} after {xs[-1]!r}", lineno
                )
            xs.append(x)
            thetas.append(t)
    if len(xs) < 2:
        raise ProfileParseError("profile needs at least two rows", None)
    if xs[0] != 0.0:
        raise ProfileParseError(f"first node must be x=0, got {xs[0]!r}", 2)
    grid = Grid(np.array(xs))
    theta = np.array(thetas)
    return Profile(grid=grid, theta=theta, beta=float(theta[0]))


def write_grid_csv(grid: Grid, path: str) -> None:
    """Dump a grid as "index,x" rows."""
    lines = ["index,x"]
    for i, x in enumerate(grid.nodes):
        lines.append(f"{i},{_fmt(x)}")
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


@dataclass(frozen=True)
class RunRecord:
    """Everything one relaxation run needs to be reproduced and compared.

    All fields are JSON-native dicts (floats, ints, bools, strings, lists), so
    the record round-trips losslessly through write_run_json/read_run_json.
    """

    model: dict
    grid_spec: dict
    relaxation: dict
    result: dict
    energy: dict
    diagnostics: dict
    files: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "model": self.model,
            "grid_spec": self.grid_spec,
            "relaxation": self.relaxation,
            "result": self.result,
            "energy": self.energy,
            "diagnostics": self.diagnostics,
            "files": self.files,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "RunRecord":
        return cls(
            model=data["model"],
            grid_spec=data["grid_spec"],
            relaxation=data["relaxation"],
            result=data["result"],
            energy=data["energy"],
            diagnostics=data["diagnostics"],
            files=data.get("files", {}),
        )


def write_run_json(record: RunRecord, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(record.to_json_dict(), handle, sort_keys=True, indent=2)
        handle.write("\n")


def read_run_json(path: str) -> RunRecord:
    with open(path, encoding="utf-8") as handle:
        return RunRecord.from_json_dict(json.load(handle))


def write_sweep_json(records: list, path: str) -> None:
    """Aggregate table for a parameter sweep: a list of run-record dicts under
    "runs", in the order given (callers sort by (beta, nu) for determinism)."""
    payload = {"runs": [r.to_json_dict() for r in records]}
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(payload, handle, sort_keys=True, indent=2)
        handle.write("\n")
