"""Matrix files: ``{"n": int, "data": [[row], ...]}``."""

from __future__ import annotations

import json
import math

import numpy as np

from .matrix import ConfigurationError, as_nonnegative


class MatrixParseError(ConfigurationError):
    pass


def parse_matrix(doc) -> np.ndarray:
    if not isinstance(doc, dict) or "data" not in doc:
        raise MatrixParseError('matrix JSON must be an object with a "data" field')
    data = doc["data"]
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise MatrixParseError('"data" must be a non-empty list of rows')
    rows = len(data)
    for i, row in enumerate(data):
        if len(row) != rows:
            raise MatrixParseError(f"matrix is not square: row {i} has {len(row)} entries, "
                                   f"expected {rows}")
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise MatrixParseError(f"entry ({i}, {j}) is not a number: {x!r}")
            if not math.isfinite(x) or x < 0:
                raise MatrixParseError(f"entry ({i}, {j}) must be finite and >= 0, got {x!r}")
    n = doc.get("n", rows)
    if n != rows:
        raise MatrixParseError(f'"n" is {n!r} but data has {rows} rows')
    try:
        return as_nonnegative(np.array(data, dtype=np.float64))
    except ValueError as exc:
        raise MatrixParseError(str(exc)) from exc


def load_matrix(path) -> np.ndarray:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise MatrixParseError(f"{path}: malformed JSON ({exc})") from exc
    except OSError as exc:
        raise MatrixParseError(f"{path}: {exc.strerror}") from exc
    try:
        return parse_matrix(doc)
    except MatrixParseError as exc:
        raise MatrixParseError(f"{path}: {exc}") from exc


def save_matrix(a, path) -> None:
    # repr-precision floats make the round trip exact.
    a = as_nonnegative(a)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"n": int(a.shape[0]), "data": a.tolist()}, fh)
        fh.write("\n")
