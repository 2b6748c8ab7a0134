"""Deterministic JSON/CSV encoding.

Floats are written with 17 significant digits and object keys are sorted,
so identical inputs always give identical bytes. Complex matrices are
row-major arrays of [re, im] pairs; real subspaces are
{"ambient_dim": n, "columns": [[[re, im], ...], ...]}.
"""
from __future__ import annotations

import csv
import io as _io
import json
import math

import numpy as np

from .errors import ValidationError
from .hilbert import DEFAULT_TOL, RealSubspace, real_orthonormalize, zero_subspace


def _float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    if x == 0.0:
        return "0.0"
    s = f"{x:.17g}"
    if "e" not in s and "." not in s and "n" not in s:
        s += ".0"
    return s


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist(), indent, level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(obj[k], indent, level + 1)}" for k in sorted(obj, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + _encode(v, indent, level + 1) for v in obj) + "\n" + end + "]"
    raise ValidationError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent=2) -> str:
    return _encode(obj, indent, 0) + "\n"


def write_json(path, obj):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(obj))


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as err:
        raise ValidationError(f"{path}: invalid JSON ({err})") from err


def encode_matrix(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim == 1:
        return [[float(z.real), float(z.imag)] for z in m]
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def decode_matrix(obj):
    """Inverse of :func:`encode_matrix`: a vector or matrix of [re, im] pairs."""
    arr = np.asarray(obj, dtype=float)
    if arr.ndim not in (2, 3) or arr.shape[-1] != 2:
        raise ValidationError(f"expected [re, im] pairs, got an array of shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def frame_to_json(v: RealSubspace):
    return {"ambient_dim": v.ambient_dim, "columns": [encode_matrix(c) for c in v.frame.T]}


def frame_from_json(obj, tol=None) -> RealSubspace:
    tol = DEFAULT_TOL if tol is None else tol
    try:
        n = int(obj["ambient_dim"])
        cols = [np.asarray(c, dtype=float) for c in obj["columns"]]
    except (KeyError, TypeError, ValueError) as err:
        raise ValidationError(f"frame JSON needs ambient_dim and columns ({err})") from err
    if not cols:
        return zero_subspace(n, tol)
    vecs = [decode_matrix(c) for c in cols]
    if any(v.size != n for v in vecs):
        raise ValidationError("column length differs from ambient_dim")
    return real_orthonormalize(vecs, tol)


def csv_text(header, rows) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_float(float(x)) if isinstance(x, (float, np.floating)) else x for x in row])
    return buf.getvalue()
