"""Matrix exchange format.

A matrix travels as a JSON object {"n": int, "re": n x n reals, "im": n x n
reals}.  Values are serialized with 17 significant digits, which round-trips
IEEE doubles exactly; bit-exact text round-trip is not promised.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import DimensionError, DomainError

__all__ = ["matrix_to_obj", "matrix_from_obj", "dump_matrix", "load_matrix"]


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def matrix_to_obj(M) -> dict:
    """Exchange dict for a square complex matrix (parse of dump_matrix output)."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"matrix must be square, got shape {A.shape}")
    n = A.shape[0]
    return {
        "n": n,
        "re": [[float(_fmt(v)) for v in row] for row in A.real],
        "im": [[float(_fmt(v)) for v in row] for row in A.imag],
    }


def matrix_from_obj(obj) -> np.ndarray:
    if not isinstance(obj, dict) or not {"n", "re", "im"} <= set(obj):
        raise DomainError("matrix object must have fields n, re, im")
    n = int(obj["n"])
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    if re.shape != (n, n) or im.shape != (n, n):
        raise DimensionError(f"re/im must be {n}x{n} arrays")
    if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
        raise DomainError("matrix entries must be finite")
    return re + 1j * im


def dump_matrix(M) -> str:
    """Serialize one matrix, re/im entries written with 17 significant digits."""
    A = np.asarray(M, dtype=complex)
    obj = matrix_to_obj(A)

    def rows(part: np.ndarray) -> str:
        return ",\n    ".join("[" + ", ".join(_fmt(v) for v in row) + "]" for row in part)

    return (
        "{\n"
        f'  "n": {obj["n"]},\n'
        f'  "re": [\n    {rows(A.real)}\n  ],\n'
        f'  "im": [\n    {rows(A.imag)}\n  ]\n'
        "}\n"
    )


def load_matrix(text: str) -> np.ndarray:
    return matrix_from_obj(json.loads(text))
