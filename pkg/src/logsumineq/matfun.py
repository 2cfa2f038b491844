"""Hermitian matrix functional calculus and Loewner-order comparison.

Everything here works through the spectral decomposition A = U diag(w) U†:
f(A) = U diag(f(w)) U†.  Two eigensolvers are available: "eigh" (LAPACK via
numpy) and "jacobi" (a self-contained cyclic Jacobi sweep).  The second
exists so that candidate counterexamples can be re-verified through an
independent numerical route; keep the two code paths distinct.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError, NumericError, PreconditionError, SingularityError
from .functions import FunctionSpec

__all__ = [
    "SpectralDecomposition",
    "LoewnerVerdict",
    "maxnorm",
    "operator_norm",
    "hermitize",
    "commutator_maxnorm",
    "commutes",
    "jacobi_eigh",
    "spectral_decompose",
    "apply_function",
    "loewner_leq",
    "make_commuting_pair",
    "psd_inverse",
    "psd_sqrt",
]

HERMITIAN_RTOL = 1e-12
COMMUTE_RTOL = 1e-9
UNITARY_TOL = 1e-10
PSD_CLAMP_RTOL = 1e-12
SOLVERS = ("eigh", "jacobi")


def _as_square_complex(M, what: str = "matrix") -> np.ndarray:
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise DimensionError(f"{what} must be square with n >= 1, got shape {A.shape}")
    if not np.all(np.isfinite(A.real)) or not np.all(np.isfinite(A.imag)):
        raise DomainError(f"{what} has non-finite entries")
    return A


def maxnorm(M) -> float:
    """Largest entry magnitude."""
    A = np.asarray(M, dtype=complex)
    return float(np.max(np.abs(A))) if A.size else 0.0


def operator_norm(M) -> float:
    """Largest singular value."""
    return float(np.linalg.norm(np.asarray(M, dtype=complex), 2))


def hermitize(M) -> np.ndarray:
    """(M + M†)/2.  Idempotent on Hermitian inputs."""
    A = _as_square_complex(M)
    return (A + A.conj().T) / 2.0


def _require_hermitian(M, what: str = "matrix") -> np.ndarray:
    A = _as_square_complex(M, what)
    drift = maxnorm(A - A.conj().T)
    if drift > HERMITIAN_RTOL * max(1.0, maxnorm(A)):
        raise DomainError(f"{what} is not Hermitian (anti-Hermitian part {drift:.3e})")
    return (A + A.conj().T) / 2.0


def commutator_maxnorm(A, B) -> float:
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    return maxnorm(A @ B - B @ A)


def commutes(A, B, rtol: float = COMMUTE_RTOL) -> bool:
    return commutator_maxnorm(A, B) <= rtol * max(1.0, maxnorm(A) * maxnorm(B))


@dataclass(frozen=True)
class SpectralDecomposition:
    """Unitary U and real eigenvalues w (ascending) with A = U diag(w) U†."""

    unitary: np.ndarray
    eigenvalues: np.ndarray

    def reconstruct(self) -> np.ndarray:
        U = self.unitary
        return hermitize((U * self.eigenvalues) @ U.conj().T)


@dataclass(frozen=True)
class LoewnerVerdict:
    """PSD verdict on a residual matrix.

    holds iff residual_min_eigenvalue >= -tolerance * max(1, residual_norm),
    where residual_norm is the spectral norm of the residual.
    """

    residual_min_eigenvalue: float
    residual_norm: float
    tolerance: float
    holds: bool


_JACOBI_MAX_SWEEPS = 100


def jacobi_eigh(A, max_sweeps: int = _JACOBI_MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi diagonalization of a Hermitian matrix.

    Returns (eigenvalues ascending, unitary V with A = V diag(w) V†).
    Independent of LAPACK; used as the second-opinion solver.
    """
    H = _require_hermitian(A, "jacobi input")
    n = H.shape[0]
    V = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(H)))
    target = 1e-14 * scale

    def offnorm(M: np.ndarray) -> float:
        off = M - np.diag(np.diag(M))
        return float(np.linalg.norm(off))

    sweeps = 0
    while offnorm(H) > target:
        if sweeps >= max_sweeps:
            raise NumericError(
                f"jacobi did not converge in {max_sweeps} sweeps "
                f"(n={n}, offdiag={offnorm(H):.3e}, maxnorm={maxnorm(H):.3e})"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = H[p, q]
                beta = abs(apq)
                if beta <= 1e-18 * scale:
                    continue
                phi = apq / beta
                tau = (H[q, q].real - H[p, p].real) / (2.0 * beta)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # A <- J† A J with J[p,p]=c, J[p,q]=s*phi, J[q,p]=-s*conj(phi), J[q,q]=c
                col_p = H[:, p].copy()
                col_q = H[:, q].copy()
                H[:, p] = c * col_p - s * np.conj(phi) * col_q
                H[:, q] = s * phi * col_p + c * col_q
                row_p = H[p, :].copy()
                row_q = H[q, :].copy()
                H[p, :] = c * row_p - s * phi * row_q
                H[q, :] = s * np.conj(phi) * row_p + c * row_q
                H[p, q] = 0.0
                H[q, p] = 0.0
                H[p, p] = H[p, p].real
                H[q, q] = H[q, q].real
                vcol_p = V[:, p].copy()
                vcol_q = V[:, q].copy()
                V[:, p] = c * vcol_p - s * np.conj(phi) * vcol_q
                V[:, q] = s * phi * vcol_p + c * vcol_q
        sweeps += 1
    w = np.real(np.diag(H))
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def spectral_decompose(A, solver: str = "eigh") -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    if solver not in SOLVERS:
        raise DomainError(f"unknown solver {solver!r}; expected one of {SOLVERS}")
    H = _require_hermitian(A)
    if solver == "eigh":
        try:
            w, U = np.linalg.eigh(H)
        except np.linalg.LinAlgError as exc:
            raise NumericError(
                f"eigh failed to converge (n={H.shape[0]}, maxnorm={maxnorm(H):.3e}): {exc}"
            ) from exc
    else:
        w, U = jacobi_eigh(H)
    return SpectralDecomposition(np.ascontiguousarray(U), np.asarray(w, dtype=float))


def apply_function(f: FunctionSpec, A, solver: str = "eigh") -> np.ndarray:
    """f(A) = U diag(f(w)) U†.  Raises DomainError if an eigenvalue exits f's domain."""
    dec = spectral_decompose(A, solver)
    fw = np.asarray(f(dec.eigenvalues), dtype=float)
    U = dec.unitary
    return hermitize((U * fw) @ U.conj().T)


def loewner_leq(A, B, tol: float = 1e-9, solver: str = "eigh") -> LoewnerVerdict:
    """Verdict on A <= B in the Loewner order, i.e. B - A PSD within tolerance."""
    A = _as_square_complex(A, "A")
    B = _as_square_complex(B, "B")
    if A.shape != B.shape:
        raise DimensionError(f"dimension mismatch {A.shape} vs {B.shape}")
    return residual_verdict(B - A, tol, solver)


def residual_verdict(R, tol: float = 1e-9, solver: str = "eigh") -> LoewnerVerdict:
    """PSD verdict on the Hermitian part of a residual matrix."""
    w = spectral_decompose(hermitize(R), solver).eigenvalues
    min_eig = float(w[0])
    norm = float(np.max(np.abs(w)))
    holds = min_eig >= -tol * max(1.0, norm)
    return LoewnerVerdict(min_eig, norm, float(tol), bool(holds))


def make_commuting_pair(U, lambda_a, lambda_b) -> tuple[np.ndarray, np.ndarray]:
    """(U diag(la) U†, U diag(lb) U†), commuting by shared eigenbasis."""
    U = _as_square_complex(U, "U")
    n = U.shape[0]
    gram_drift = maxnorm(U.conj().T @ U - np.eye(n))
    if gram_drift > UNITARY_TOL:
        raise PreconditionError(f"U is not unitary (U†U - I maxnorm {gram_drift:.3e})")
    la = np.asarray(lambda_a, dtype=float)
    lb = np.asarray(lambda_b, dtype=float)
    if la.shape != (n,) or lb.shape != (n,):
        raise DimensionError(f"eigenvalue lists must have length {n}")
    if not (np.all(np.isfinite(la)) and np.all(np.isfinite(lb))):
        raise DomainError("eigenvalue lists must be finite")
    A = hermitize((U * la) @ U.conj().T)
    B = hermitize((U * lb) @ U.conj().T)
    return A, B


def psd_inverse(A, floor: float | None = None, solver: str = "eigh") -> np.ndarray:
    """Inverse through the spectral decomposition.

    floor defaults to 1e-10 * max|eigenvalue|; any eigenvalue below the floor
    (or a floor that is not strictly positive) is treated as singular rather
    than inverted, so round-off null spaces cannot leak huge weights.
    """
    dec = spectral_decompose(A, solver)
    w = dec.eigenvalues
    if floor is None:
        floor = 1e-10 * float(np.max(np.abs(w)))
    if floor <= 0.0 or float(w[0]) < floor:
        raise SingularityError(
            f"matrix not invertible above floor {floor:.3e} (min eigenvalue {float(w[0]):.3e})"
        )
    U = dec.unitary
    return hermitize((U * (1.0 / w)) @ U.conj().T)


def psd_sqrt(A, solver: str = "eigh") -> np.ndarray:
    """Unique PSD square root; eigenvalues in [-1e-12*norm, 0) are clamped to 0."""
    dec = spectral_decompose(A, solver)
    w = dec.eigenvalues
    clamp = PSD_CLAMP_RTOL * max(1.0, float(np.max(np.abs(w))))
    if float(w[0]) < -clamp:
        raise DomainError(
            f"matrix is not PSD (min eigenvalue {float(w[0]):.3e} below clamp -{clamp:.3e})"
        )
    U = dec.unitary
    return hermitize((U * np.sqrt(np.clip(w, 0.0, None))) @ U.conj().T)
