"""JSON matrix files: {"rows", "cols", "entries": [[re, im], ...]} in row-major order."""

from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from .errors import ParseError


def matrix_from_dict(doc):
    try:
        rows, cols, entries = int(doc["rows"]), int(doc["cols"]), doc["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"matrix document needs integer rows, cols and entries: {exc}") from None
    if rows < 0 or cols < 0:
        raise ParseError("negative dimensions")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise ParseError(f"expected {rows * cols} entries")
    values = []
    for k, pair in enumerate(entries):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ParseError(f"entry {k} is not an [re, im] pair")
        try:
            re, im = float(pair[0]), float(pair[1])
        except (TypeError, ValueError):
            raise ParseError(f"entry {k} is not numeric") from None
        if not (math.isfinite(re) and math.isfinite(im)):
            raise ParseError(f"entry {k} is not finite")
        values.append(complex(re, im))
    return np.array(values, dtype=complex).reshape(rows, cols)


def load_matrix(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return matrix_from_dict(doc)


def _num(x):
    # normalise -0.0 so reports compare byte-for-byte
    return float(x) + 0.0


def complex_list(values):
    return [[_num(z.real), _num(z.imag)] for z in np.asarray(values, dtype=complex).ravel()]


def matrix_to_dict(a):
    a = np.asarray(a, dtype=complex)
    if a.ndim == 1:
        a = a[:, None]
    return {"rows": a.shape[0], "cols": a.shape[1], "entries": complex_list(a)}


def dump_matrix(a):
    return json.dumps(matrix_to_dict(a))


def eigenvalues_csv(values):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["re", "im"])
    w.writerows(complex_list(values))
    return buf.getvalue()
