"""Text formats of the command line surface.

Points files hold one "x,y" pair per line, '#' starts a comment. Counts are inline
comma-separated integers, row-major for tables. Config files are flat key=value text whose
keys mirror the long flag names. Every CSV output is UTF-8 with a header row and floats
printed with 17 significant digits.
"""

import csv
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any, TextIO

import numpy as np
from dotenv import dotenv_values

from dirichlet_ds.errors import InputFormatError
from dirichlet_ds.models.common_models import Method
from dirichlet_ds.models.simulation_models import LabelledCurve, PValueRecord, SummaryRow
from dirichlet_ds.models.table_models import ContingencyTable, TestReport

RECORD_COLUMNS = ["dataset", "method", "k", "p_upper", "p_lower"]
ECDF_COLUMNS = ["method", "k", "bound", "grid", "value"]
REPORT_COLUMNS = ["method", "k", "n", "r_center", "p_upper", "p_lower"]
BENCH_COLUMNS = ["method", "k", "d", "m", "seconds"]
SUMMARY_COLUMNS = [
    "method",
    "k",
    "mean_p_upper",
    "mean_p_lower",
    "mean_gap",
    "alpha",
    "reject_upper",
    "reject_lower",
]
CONFIG_KEYS = {
    "n",
    "datasets",
    "resolutions",
    "m",
    "weaken",
    "hypothesis",
    "methods",
    "seed",
    "threads",
    "out",
}


def format_float(value: float) -> str:
    return f"{float(value):.17g}"


def parse_int_list(text: str, name: str = "counts") -> list[int]:
    """'3,5,2' -> [3, 5, 2]"""
    message = f"{name} must be a comma-separated list of integers: {text!r}"
    items = [item.strip() for item in str(text).split(",")]
    if any(not item for item in items):
        raise InputFormatError(message)
    try:
        return [int(item) for item in items]
    except ValueError as e:
        raise InputFormatError(message) from e


def parse_str_list(text: str) -> list[str]:
    return [item.strip() for item in str(text).split(",") if item.strip()]


def parse_points(lines: Iterable[str]) -> np.ndarray:
    """(n, 2) array from 'x,y' lines; coordinates are not range checked here"""
    pairs = []
    for number, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = [field.strip() for field in line.split(",")]
        if len(fields) != 2:
            raise InputFormatError(f"line {number}: expected 'x,y', got {raw.strip()!r}")
        try:
            pairs.append((float(fields[0]), float(fields[1])))
        except ValueError as e:
            raise InputFormatError(f"line {number}: not a number pair: {raw.strip()!r}") from e
    return np.array(pairs, dtype=np.float64).reshape(-1, 2)


def read_points(path: Path) -> np.ndarray:
    try:
        with open(path, encoding="utf-8") as handle:
            return parse_points(handle)
    except OSError as e:
        raise InputFormatError(f"cannot read points file {path}: {e}") from e


def read_config_file(path: Path) -> dict[str, Any]:
    """Flat key=value file into a dict keyed by normalised flag names"""
    if not Path(path).is_file():
        raise InputFormatError(f"config file {path} does not exist")
    values = {}
    for key, value in dotenv_values(path).items():
        name = key.strip().lower().replace("-", "_")
        if name == "master_seed":
            name = "seed"
        if name not in CONFIG_KEYS:
            raise InputFormatError(f"unknown config key {key!r} in {path}")
        if value is None:
            raise InputFormatError(f"config key {key!r} in {path} has no value")
        values[name] = value.strip()
    return values


def _writer(handle: TextIO, columns: Sequence[str]) -> Any:
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(columns)
    return writer


def write_records(handle: TextIO, records: Iterable[PValueRecord]) -> None:
    writer = _writer(handle, RECORD_COLUMNS)
    for record in records:
        writer.writerow(
            [
                record.dataset_index,
                record.method.value,
                record.k,
                format_float(record.p_upper),
                format_float(record.p_lower),
            ]
        )


def write_curves(handle: TextIO, curves: Iterable[LabelledCurve]) -> None:
    writer = _writer(handle, ECDF_COLUMNS)
    for labelled in curves:
        for grid, value in zip(labelled.curve.grid, labelled.curve.values):
            writer.writerow(
                [
                    labelled.method.value,
                    labelled.k,
                    labelled.bound.value,
                    format_float(grid),
                    format_float(value),
                ]
            )


def write_summary(handle: TextIO, rows: Iterable[SummaryRow]) -> None:
    writer = _writer(handle, SUMMARY_COLUMNS)
    for row in rows:
        writer.writerow(
            [row.method.value, row.k]
            + [
                format_float(value)
                for value in (
                    row.mean_p_upper,
                    row.mean_p_lower,
                    row.mean_gap,
                    row.alpha,
                    row.reject_upper,
                    row.reject_lower,
                )
            ]
        )


def write_reports(handle: TextIO, reports: Iterable[TestReport]) -> None:
    writer = _writer(handle, REPORT_COLUMNS)
    for report in reports:
        writer.writerow(
            [
                report.method.value,
                report.k,
                report.n,
                format_float(report.r_center),
                format_float(report.p_upper),
                format_float(report.p_lower),
            ]
        )


def write_bench(handle: TextIO, timings: Iterable[tuple[int, int, float]]) -> None:
    """One ds row per (k, m, seconds) timing; d = k^2"""
    writer = _writer(handle, BENCH_COLUMNS)
    for k, m, seconds in timings:
        writer.writerow([Method.DS.value, k, k * k, m, format_float(seconds)])


def write_table(handle: TextIO, table: ContingencyTable) -> None:
    writer = _writer(handle, [f"col_{j}" for j in range(1, table.k + 1)])
    for row in table.as_matrix():
        writer.writerow([int(count) for count in row])


def write_polytopes(handle: TextIO, weight_matrix: np.ndarray) -> None:
    """One row per draw: w0, w_1..w_d, then vertex i coordinate j as v<i>_<j>"""
    d = weight_matrix.shape[1] - 1
    columns = ["draw", "w0"] + [f"w_{i}" for i in range(1, d + 1)]
    columns += [f"v{i}_{j}" for i in range(1, d + 1) for j in range(1, d + 1)]
    writer = _writer(handle, columns)
    identity = np.eye(d)
    for index, row in enumerate(weight_matrix):
        w0, w = row[0], row[1:]
        vertices = w[np.newaxis, :] + w0 * identity
        writer.writerow(
            [index, format_float(w0)]
            + [format_float(value) for value in w]
            + [format_float(value) for value in vertices.ravel()]
        )
