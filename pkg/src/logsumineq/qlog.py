"""Deformed (q-)logarithm and its algebraic identities.

The deformed logarithm of order q is

    qlog(x) = (x**(1 - q) - 1) / (1 - q),

which converges to the natural logarithm as q -> 1.  Inside a small window
around q = 1 the natural log is substituted directly: the closed form is a
0/0 limit there and loses all precision.  Away from the window the formula
is evaluated through expm1 so that no cancellation occurs for any q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "QLogParams",
    "q_log",
    "q_log_product",
    "q_log_quotient",
    "q_log_reciprocal",
]

_MAX_LIMIT_WINDOW = 1e-6


@dataclass(frozen=True)
class QLogParams:
    """Deformation order q plus the width of the q = 1 substitution window."""

    q: float
    limit_window: float = 1e-9

    def __post_init__(self) -> None:
        if not math.isfinite(self.q):
            raise DomainError(f"deformation order must be finite, got {self.q}")
        if not (0.0 < self.limit_window <= _MAX_LIMIT_WINDOW):
            raise DomainError(
                f"limit_window must lie in (0, {_MAX_LIMIT_WINDOW}], got {self.limit_window}"
            )


def _check_positive(name: str, value) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    if np.any(arr <= 0.0):
        raise DomainError(f"{name} must be strictly positive")
    return arr


def q_log(x, params: QLogParams):
    """Evaluate qlog(x).  Accepts scalars or arrays of positive reals."""
    arr = _check_positive("x", x)
    one_minus_q = 1.0 - params.q
    if abs(one_minus_q) <= params.limit_window:
        out = np.log(arr)
    else:
        out = np.expm1(one_minus_q * np.log(arr)) / one_minus_q
    return float(out) if np.isscalar(x) or np.ndim(x) == 0 else out


def q_log_product(x, y, params: QLogParams):
    """Right-hand side of the product rule.

    qlog(x*y) = qlog(x) + qlog(y) + (1 - q) * qlog(x) * qlog(y)
    """
    lx = q_log(x, params)
    ly = q_log(y, params)
    return lx + ly + (1.0 - params.q) * lx * ly


def q_log_quotient(x, y, params: QLogParams):
    """Right-hand side of the quotient rule.

    qlog(x/y) = (qlog(x) - qlog(y)) / y**(1 - q)
    """
    lx = q_log(x, params)
    ly = q_log(y, params)
    ya = _check_positive("y", y)
    scale = ya ** (1.0 - params.q)
    out = (lx - ly) / scale
    return float(out) if np.ndim(out) == 0 else out


def q_log_reciprocal(y, params: QLogParams):
    """Right-hand side of the reciprocal rule.

    qlog(1/y) = -qlog(y) / y**(1 - q)
    """
    ly = q_log(y, params)
    ya = _check_positive("y", y)
    out = -ly / ya ** (1.0 - params.q)
    return float(out) if np.ndim(out) == 0 else out
