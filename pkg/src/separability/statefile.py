"""JSON state files: ``{"dims": [...], "matrix": [[[re, im], ...], ...], "label": ...}``.

Floats are written with Python's shortest round-trip ``repr``, so reading a
file back reproduces the matrix bit for bit.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import InvalidStateError
from .states import DensityMatrix


def state_to_json(rho: DensityMatrix, label: str | None = None) -> dict:
    doc = {
        "dims": list(rho.dims),
        "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in rho.mat],
    }
    if label is not None:
        doc["label"] = label
    return doc


def state_from_json(doc) -> tuple[DensityMatrix, str | None]:
    """Parse and validate; raises :class:`InvalidStateError` naming the failed invariant."""
    if not isinstance(doc, dict):
        raise InvalidStateError("state file must be a JSON object")
    unknown = set(doc) - {"dims", "matrix", "label"}
    if unknown:
        raise InvalidStateError(f"unknown fields in state file: {sorted(unknown)}")
    for key in ("dims", "matrix"):
        if key not in doc:
            raise InvalidStateError(f"state file is missing field {key!r}")
    dims = doc["dims"]
    if not isinstance(dims, list) or not dims or not all(isinstance(d, int) and not isinstance(d, bool) and d >= 1 for d in dims):
        raise InvalidStateError("dims must be a nonempty list of integers >= 1")
    rows = doc["matrix"]
    side = int(np.prod(dims))
    if not isinstance(rows, list) or len(rows) != side:
        raise InvalidStateError(f"matrix must have {side} rows (product of dims)")
    mat = np.empty((side, side), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != side:
            raise InvalidStateError(f"matrix row {i} must have {side} entries")
        for j, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
            ):
                raise InvalidStateError(f"matrix entry ({i}, {j}) must be a [re, im] pair of numbers")
            mat[i, j] = complex(entry[0], entry[1])
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise InvalidStateError("label must be a string")
    return DensityMatrix(mat, tuple(dims)), label


def write_state(path, rho: DensityMatrix, label: str | None = None) -> None:
    Path(path).write_text(json.dumps(state_to_json(rho, label)) + "\n", encoding="utf-8")


def read_state(path) -> tuple[DensityMatrix, str | None]:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InvalidStateError(f"not valid JSON: {exc}") from None
    return state_from_json(doc)
