"""Problem files and scan-grid CSVs."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .spectral import HermitianMatrix, SLEProblem

PROBLEM_HERMITIAN_TOL = 1e-8


class ProblemFileError(ValueError):
    pass


def _complex(value, where: str) -> complex:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
    ):
        raise ProblemFileError(f"{where}: expected a [re, im] pair of numbers, got {value!r}")
    return complex(value[0], value[1])


def parse_problem(doc) -> SLEProblem:
    if not isinstance(doc, dict):
        raise ProblemFileError("top level must be an object with 'matrix' and 'b'")
    for key in ("matrix", "b"):
        if key not in doc:
            raise ProblemFileError(f"missing field '{key}'")
    rows = doc["matrix"]
    if not isinstance(rows, list) or not rows:
        raise ProblemFileError("matrix: expected a non-empty list of rows")
    size = len(rows)
    a = np.zeros((size, size), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != size:
            raise ProblemFileError(f"matrix[{i}]: expected a row of {size} entries")
        for j, v in enumerate(row):
            a[i, j] = _complex(v, f"matrix[{i}][{j}]")
    b_raw = doc["b"]
    if not isinstance(b_raw, list) or len(b_raw) != size:
        raise ProblemFileError(f"b: expected {size} entries")
    b = np.array([_complex(v, f"b[{i}]") for i, v in enumerate(b_raw)])
    try:
        return SLEProblem(HermitianMatrix(a, PROBLEM_HERMITIAN_TOL), b)
    except ValueError as exc:
        raise ProblemFileError(str(exc)) from exc


def load_problem(path) -> SLEProblem:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise ProblemFileError(f"{path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    try:
        return parse_problem(doc)
    except ProblemFileError as exc:
        raise ProblemFileError(f"{path}: {exc}") from exc


def problem_to_doc(problem: SLEProblem) -> dict:
    pair = lambda z: [float(z.real), float(z.imag)]  # noqa: E731
    return {
        "matrix": [[pair(z) for z in row] for row in problem.A.entries],
        "b": [pair(z) for z in problem.b],
    }


def save_problem(problem: SLEProblem, path):
    Path(path).write_text(json.dumps(problem_to_doc(problem), indent=2) + "\n")


def write_grid_csv(grid, path):
    """Long format, one row per grid point, first axis outermost."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([grid.axes[0], grid.axes[1], "fidelity"])
        for i, u in enumerate(grid.values[0]):
            for j, v in enumerate(grid.values[1]):
                w.writerow([f"{u:.12g}", f"{v:.12g}", f"{grid.fidelity[i, j]:.12g}"])


def read_grid_csv(path):
    """Returns ``(axes, first_axis_values, second_axis_values, fidelity_matrix)``."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(x) for x in r] for r in reader if r]
    data = np.array(rows)
    xs = np.unique(data[:, 0])
    ys = np.unique(data[:, 1])
    return (header[0], header[1]), xs, ys, data[:, 2].reshape(len(xs), len(ys))
