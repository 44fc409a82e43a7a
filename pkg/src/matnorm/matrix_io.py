"""JSON matrix files: ``{"n": int, "entries": [[[re, im], ...], ...]}``, row-major."""
from __future__ import annotations

import json
import math

import numpy as np

from .errors import ValidationError
from .linalg_core import as_matrix

__all__ = ["matrix_to_obj", "matrix_from_obj", "read_matrix", "write_matrix", "format_float", "dumps"]


def matrix_to_obj(A) -> dict:
    A = as_matrix(A)
    return {
        "n": int(A.shape[0]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in A],
    }


def matrix_from_obj(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "n" not in obj or "entries" not in obj:
        raise ValidationError('matrix file needs keys "n" and "entries"')
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValidationError(f'"n" must be a positive integer, got {n!r}')
    rows = obj["entries"]
    if not isinstance(rows, list) or len(rows) != n:
        raise ValidationError(f"expected {n} rows")
    out = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ValidationError(f"row {i} must have {n} entries")
        for j, pair in enumerate(row):
            if not isinstance(pair, list) or len(pair) != 2:
                raise ValidationError(f"entry ({i}, {j}) must be a [re, im] pair")
            re, im = pair
            if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (re, im)):
                raise ValidationError(f"entry ({i}, {j}) must hold numbers")
            if not (math.isfinite(re) and math.isfinite(im)):
                raise ValidationError(f"entry ({i}, {j}) is not finite")
            out[i, j] = complex(float(re), float(im))
    return out


def read_matrix(path) -> np.ndarray:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc.msg}") from exc
    return matrix_from_obj(obj)


def write_matrix(path, A) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(matrix_to_obj(A)))
        fh.write("\n")


def format_float(x: float) -> str:
    """17 significant digits, always with a decimal point or exponent."""
    x = float(x)
    if not math.isfinite(x):
        return "null"
    s = format(x, ".17g")
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def dumps(obj) -> str:
    """Compact deterministic JSON with every float written by :func:`format_float`."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, complex):
        return dumps([obj.real, obj.imag])
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")
