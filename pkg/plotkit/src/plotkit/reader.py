"""CSV contract validation and parsing.

The sweep CSV header must be exactly
config,mode,g,p,lambda,tau,L,R,U,C,EW; any deviation is rejected with the
first offending column named.
"""

from __future__ import annotations

import csv

import numpy as np

CSV_COLUMNS = ("config", "mode", "g", "p", "lambda", "tau", "L", "R", "U", "C", "EW")
_NUMERIC = CSV_COLUMNS[2:]


class PlotDataError(Exception):
    """Input CSV violates the sweep contract."""


def _check_header(header: list[str]) -> None:
    if len(header) != len(CSV_COLUMNS):
        raise PlotDataError(
            f"header has {len(header)} columns, expected {len(CSV_COLUMNS)}: "
            f"{','.join(CSV_COLUMNS)}")
    for pos, (got, want) in enumerate(zip(header, CSV_COLUMNS)):
        if got != want:
            raise PlotDataError(
                f"bad column at position {pos}: expected {want!r}, found {got!r}")


def read_sweep_csv(path) -> dict[str, np.ndarray]:
    """Parse a sweep CSV into column arrays; strings for config/mode, floats
    elsewhere.  Raises PlotDataError for contract violations or empty data."""
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise PlotDataError(f"{path}: file is empty") from None
            _check_header(header)
            rows = list(reader)
    except OSError as exc:
        raise PlotDataError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise PlotDataError(f"{path}: no data rows")
    data: dict[str, np.ndarray] = {}
    for idx, name in enumerate(CSV_COLUMNS):
        column = [row[idx] if idx < len(row) else None for row in rows]
        if any(cell is None for cell in column):
            raise PlotDataError(f"{path}: short row (missing column {name!r})")
        if name in _NUMERIC:
            try:
                data[name] = np.array([float(cell) for cell in column])
            except ValueError:
                raise PlotDataError(
                    f"{path}: non-numeric value in column {name!r}") from None
        else:
            data[name] = np.array(column, dtype=object)
    return data
