"""Operator-order inequalities for non-commuting positive definite families.

Verdicts compare both sides of a claimed Loewner inequality by forming the
residual RHS - LHS (or the claim-appropriate orientation) and checking its
minimum eigenvalue.  Operator monotonicity/concavity/convexity of the scalar
function is established by catalog, not numerically: only families whose
operator class is classical textbook knowledge get the flags.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, PreconditionError
from .functions import FunctionSpec
from .matfun import (
    LoewnerVerdict,
    _as_square_complex,
    apply_function,
    hermitize,
    maxnorm,
    operator_norm,
    psd_inverse,
    psd_sqrt,
    residual_verdict,
    spectral_decompose,
)

__all__ = [
    "operator_class_flags",
    "require_operator_class",
    "operator_perspective",
    "perspective_identity_gap",
    "operator_jensen_residual",
    "perspective_sum_residual",
    "operator_shannon_residual",
    "pooled_inverse_residual",
    "matrix_mean",
    "pooled_mean_residual",
    "split_mean_residual",
    "mean_monotonicity_residual",
]

DEFAULT_TOLERANCE = 1e-9
SUM_MATCH_RTOL = 1e-9
_F_AT_ANCHOR_TOL = 1e-12


def operator_class_flags(f: FunctionSpec) -> frozenset[str]:
    """Catalog of known operator classes; adding a constant offset preserves all three."""
    fam = f.family
    if fam == "identity":
        return frozenset({"operator_monotone", "operator_concave", "operator_convex"})
    if fam in ("log", "shifted_log"):
        return frozenset({"operator_monotone", "operator_concave"})
    if fam == "q_log":
        if 0.0 <= float(f.param) <= 2.0:
            return frozenset({"operator_monotone", "operator_concave"})
        return frozenset()
    if fam == "power":
        r = float(f.param)
        flags: set[str] = set()
        if 0.0 < r <= 1.0:
            flags.update({"operator_monotone", "operator_concave"})
        if 1.0 <= r <= 2.0 or -1.0 <= r < 0.0:
            flags.add("operator_convex")
        return frozenset(flags)
    return frozenset()


def require_operator_class(f: FunctionSpec, *needed: str) -> None:
    flags = operator_class_flags(f)
    missing = [name for name in needed if name not in flags]
    if missing:
        raise PreconditionError(
            f"{f.label()} is not in the operator catalog as {', '.join(missing)}"
        )


def _validate_family(mats, what: str) -> list[np.ndarray]:
    if len(mats) < 1:
        raise DomainError(f"{what} must contain at least one matrix")
    out = [hermitize(M) for M in mats]
    n = out[0].shape[0]
    for k, M in enumerate(out):
        if M.shape[0] != n:
            raise DomainError(f"{what}[{k}] has dimension {M.shape[0]}, expected {n}")
    return out


def operator_perspective(f: FunctionSpec, A, B, solver: str = "eigh") -> np.ndarray:
    """A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2} for positive definite A."""
    sA = psd_sqrt(A, solver)
    sA_inv = psd_inverse(sA, solver=solver)
    arg = hermitize(sA_inv @ hermitize(B) @ sA_inv)
    return hermitize(sA @ apply_function(f, arg, solver) @ sA)


def perspective_identity_gap(f: FunctionSpec, A, B, solver: str = "eigh") -> float:
    """Relative maxnorm distance between the perspective of (A, B) and plain f(B).

    The two coincide when A = I (or when A and B commute and f is applied in
    the shared basis); for generic non-commuting pairs they differ by O(1).
    This is a measurement, never an assertion.
    """
    P = operator_perspective(f, A, B, solver)
    FB = apply_function(f, hermitize(B), solver)
    return maxnorm(P - FB) / max(1.0, maxnorm(FB))


def operator_jensen_residual(
    f: FunctionSpec,
    contraction,
    X,
    tol: float = DEFAULT_TOLERANCE,
    solver: str = "eigh",
) -> LoewnerVerdict:
    """Operator Jensen check for a contraction C (operator norm <= 1).

    For catalog operator-monotone f (on [0, infinity), with f(0) >= 0) and
    PSD X the verdict is on f(C† X C) - C† f(X) C >= 0.  For catalog
    operator-convex f with f(0) <= 0 it is on C† f(X) C - f(C† X C) >= 0.
    When C† C = I both sides agree by similarity and the anchor conditions
    at 0 are not needed.
    """
    C = _as_square_complex(contraction, "contraction")
    norm = operator_norm(C)
    if norm > 1.0 + 1e-12:
        raise PreconditionError(f"contraction has operator norm {norm!r} > 1")
    Xh = hermitize(X)
    if C.shape != Xh.shape:
        raise DomainError(f"contraction shape {C.shape} does not match X shape {Xh.shape}")
    Y = hermitize(C.conj().T @ Xh @ C)
    unitary_like = maxnorm(C.conj().T @ C - np.eye(C.shape[0])) <= 1e-12

    flags = operator_class_flags(f)
    lo, hi, lo_open = f.domain()
    zero_in_domain = (lo < 0.0 or (lo == 0.0 and not lo_open)) and hi >= 0.0

    if "operator_monotone" in flags:
        if not unitary_like:
            wx = spectral_decompose(Xh, solver).eigenvalues
            if float(wx[0]) < -1e-12 * max(1.0, float(np.max(np.abs(wx)))):
                raise PreconditionError("X must be PSD for the monotone direction")
            if not zero_in_domain:
                raise PreconditionError(
                    f"{f.label()} is undefined at 0; a strict contraction pushes the "
                    "spectrum there"
                )
            if float(f(0.0)) < -_F_AT_ANCHOR_TOL:
                raise PreconditionError("monotone direction needs f(0) >= 0")
        residual = apply_function(f, Y, solver) - C.conj().T @ apply_function(f, Xh, solver) @ C
    elif "operator_convex" in flags:
        if not unitary_like:
            if not zero_in_domain:
                raise PreconditionError(
                    f"{f.label()} is undefined at 0; a strict contraction pushes the "
                    "spectrum there"
                )
            if float(f(0.0)) > _F_AT_ANCHOR_TOL:
                raise PreconditionError("convex direction needs f(0) <= 0")
        residual = C.conj().T @ apply_function(f, Xh, solver) @ C - apply_function(f, Y, solver)
    else:
        raise PreconditionError(
            f"{f.label()} is neither operator monotone nor operator convex in the catalog"
        )
    return residual_verdict(residual, tol, solver)


def _require_expansive(A_sum: np.ndarray, m: int, tol: float, solver: str) -> None:
    n = A_sum.shape[0]
    check = residual_verdict(A_sum - m * np.eye(n), tol, solver)
    if not check.holds:
        raise PreconditionError(
            f"family is not expansive: sum(A_i) >= m*I fails "
            f"(min eigenvalue of the slack {check.residual_min_eigenvalue:.3e})"
        )


def perspective_sum_residual(
    f: FunctionSpec,
    A_family,
    B_family,
    lhs_form: str = "perspective_sum",
    require_expansive: bool = True,
    tol: float = DEFAULT_TOLERANCE,
    solver: str = "eigh",
) -> LoewnerVerdict:
    """Superadditivity of the operator perspective over a PD family.

        sum_i A_i^{1/2} f(A_i^{-1/2} B_i A_i^{-1/2}) A_i^{1/2}
            <= A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2},   A = sum A_i, B = sum B_i

    for catalog operator-concave f.  lhs_form selects the left side:
    "perspective_sum" is the displayed sum above; "sum_fb" replaces each
    summand with plain f(B_i), which is a genuinely different (and for
    some f false) claim kept for comparison experiments.  With
    require_expansive=True the input must satisfy sum(A_i) >= m*I; pass
    False to probe the inequality outside that hypothesis (see the harness
    search mode).
    """
    As = _validate_family(A_family, "A_family")
    Bs = _validate_family(B_family, "B_family")
    if len(As) != len(Bs):
        raise DomainError("A_family and B_family must have the same length")
    if As[0].shape != Bs[0].shape:
        raise DomainError("A_family and B_family must share dimension")
    require_operator_class(f, "operator_concave")
    m = len(As)
    A = sum(As)
    B = sum(Bs)
    if require_expansive:
        _require_expansive(A, m, tol, solver)
    rhs = operator_perspective(f, A, B, solver)
    if lhs_form == "perspective_sum":
        lhs = sum(operator_perspective(f, Ai, Bi, solver) for Ai, Bi in zip(As, Bs))
    elif lhs_form == "sum_fb":
        lhs = sum(apply_function(f, Bi, solver) for Bi in Bs)
    else:
        raise DomainError(f"unknown lhs_form {lhs_form!r}")
    return residual_verdict(rhs - lhs, tol, solver)


def operator_shannon_residual(
    A_family,
    B_family,
    f: FunctionSpec,
    tol: float = DEFAULT_TOLERANCE,
    solver: str = "eigh",
) -> LoewnerVerdict:
    """Negative semidefiniteness of the perspective sum when the totals match.

    Requires sum(A_i) = sum(B_i) within tolerance, sum(A_i) >= m*I, and a
    catalog operator-concave f with f(1) = 0.  The verdict is on
    -sum_i A_i^{1/2} f(A_i^{-1/2} B_i A_i^{-1/2}) A_i^{1/2} >= 0.
    """
    As = _validate_family(A_family, "A_family")
    Bs = _validate_family(B_family, "B_family")
    if len(As) != len(Bs) or As[0].shape != Bs[0].shape:
        raise DomainError("families must match in length and dimension")
    require_operator_class(f, "operator_concave")
    f_at_one = float(f(1.0))
    if abs(f_at_one) > _F_AT_ANCHOR_TOL:
        raise PreconditionError(f"f(1) must vanish, got {f_at_one!r}")
    A = sum(As)
    B = sum(Bs)
    mismatch = maxnorm(A - B)
    if mismatch > SUM_MATCH_RTOL * max(1.0, maxnorm(A)):
        raise PreconditionError(f"sum(A_i) != sum(B_i) (maxnorm mismatch {mismatch:.3e})")
    _require_expansive(A, len(As), tol, solver)
    total = sum(operator_perspective(f, Ai, Bi, solver) for Ai, Bi in zip(As, Bs))
    return residual_verdict(-total, tol, solver)


def pooled_inverse_residual(
    X_family,
    A_family,
    tol: float = DEFAULT_TOLERANCE,
    solver: str = "eigh",
) -> LoewnerVerdict:
    """sum_i X_i† A_i^{-1} X_i >= (sum X_i)† (sum A_i)^{-1} (sum X_i).

    X_i are arbitrary square complex matrices; A_i must be PD.
    """
    As = _validate_family(A_family, "A_family")
    if len(X_family) != len(As):
        raise DomainError("X_family and A_family must have the same length")
    n = As[0].shape[0]
    Xs = []
    for k, X in enumerate(X_family):
        Xk = _as_square_complex(X, f"X_family[{k}]")
        if Xk.shape[0] != n:
            raise DomainError(f"X_family[{k}] has dimension {Xk.shape[0]}, expected {n}")
        Xs.append(Xk)
    lhs = sum(
        hermitize(X.conj().T @ psd_inverse(A, solver=solver) @ X) for X, A in zip(Xs, As)
    )
    SX = sum(Xs)
    SA = sum(As)
    rhs = hermitize(SX.conj().T @ psd_inverse(SA, solver=solver) @ SX)
    return residual_verdict(lhs - rhs, tol, solver)


def matrix_mean(f: FunctionSpec, A, B, solver: str = "eigh") -> np.ndarray:
    """B^{1/2} [f(B^{1/2} A^{-1} B^{1/2})]^{-1} B^{1/2} for PD A, B.

    f's matrix image must be PD so the middle inverse exists; for
    f = power(1/2) this is the geometric mean of A and B.
    """
    sB = psd_sqrt(B, solver)
    arg = hermitize(sB @ psd_inverse(A, solver=solver) @ sB)
    f_img = apply_function(f, arg, solver)
    return hermitize(sB @ psd_inverse(f_img, solver=solver) @ sB)


def pooled_mean_residual(
    f: FunctionSpec,
    A_family,
    B_family,
    tol: float = DEFAULT_TOLERANCE,
    solver: str = "eigh",
) -> LoewnerVerdict:
    """Pooled-family mean bound for catalog operator-monotone f:

        (1/m) (sum B_i^{1/2}) [sum f(B_i^{1/2} A_i^{-1} B_i^{1/2})]^{-1} (sum B_i^{1/2})
            <= B^{1/2} [f(B^{1/2} A^{-1} B^{1/2})]^{-1} B^{1/2}.
    """
    As = _validate_family(A_family, "A_family")
    Bs = _validate_family(B_family, "B_family")
    if len(As) != len(Bs) or As[0].shape != Bs[0].shape:
        raise DomainError("families must match in length and dimension")
    require_operator_class(f, "operator_monotone")
    m = len(As)
    sB_sum = sum(psd_sqrt(Bi, solver) for Bi in Bs)
    f_sum = sum(
        apply_function(
            f,
            hermitize(psd_sqrt(Bi, solver) @ psd_inverse(Ai, solver=solver) @ psd_sqrt(Bi, solver)),
            solver,
        )
        for Ai, Bi in zip(As, Bs)
    )
    lhs = hermitize(sB_sum @ psd_inverse(f_sum, solver=solver) @ sB_sum) / m
    rhs = matrix_mean(f, sum(As), sum(Bs), solver)
    return residual_verdict(rhs - lhs, tol, solver)


def split_mean_residual(
    f: FunctionSpec,
    A_family,
    B_family,
    tol: float = DEFAULT_TOLERANCE,
    solver: str = "eigh",
) -> LoewnerVerdict:
    """Per-member split of the pooled mean bound:

        sum_i A_i^{1/2} B_i^{1/2} [f(B_i^{1/2} A_i^{-1} B_i^{1/2})]^{-1} B_i^{1/2} A_i^{1/2}
            <= (1/m) (sum A_i^{1/2}) B^{1/2} [f(B^{1/2} A^{-1} B^{1/2})]^{-1} B^{1/2} (sum A_i^{1/2}).

    The verdict reports the residual as computed; empirically this direction
    fails for families with widely spread spectra, so callers should treat a
    negative verdict on valid PD input as information, not as a numerical
    fault (see the test suite for a reproducible 1x1 instance).
    """
    As = _validate_family(A_family, "A_family")
    Bs = _validate_family(B_family, "B_family")
    if len(As) != len(Bs) or As[0].shape != Bs[0].shape:
        raise DomainError("families must match in length and dimension")
    require_operator_class(f, "operator_monotone")
    m = len(As)
    lhs = 0.0 * As[0]
    for Ai, Bi in zip(As, Bs):
        sA = psd_sqrt(Ai, solver)
        lhs = lhs + hermitize(sA @ matrix_mean(f, Ai, Bi, solver) @ sA)
    sA_sum = sum(psd_sqrt(Ai, solver) for Ai in As)
    rhs = hermitize(sA_sum @ matrix_mean(f, sum(As), sum(Bs), solver) @ sA_sum) / m
    return residual_verdict(rhs - lhs, tol, solver)


def mean_monotonicity_residual(
    f: FunctionSpec,
    A_part,
    B_part,
    A_whole,
    B_whole,
    tol: float = DEFAULT_TOLERANCE,
    solver: str = "eigh",
) -> LoewnerVerdict:
    """Mean monotonicity in both arguments for catalog operator-monotone f:

        A_part <= A_whole and B_part <= B_whole (all PD) implies
        mean(A_part, B_part) <= mean(A_whole, B_whole)

    with mean(A, B) = B^{1/2}[f(B^{1/2}A^{-1}B^{1/2})]^{-1}B^{1/2}.
    """
    Ai = hermitize(A_part)
    Bi = hermitize(B_part)
    A = hermitize(A_whole)
    B = hermitize(B_whole)
    require_operator_class(f, "operator_monotone")
    order_a = residual_verdict(A - Ai, tol, solver)
    if not order_a.holds:
        raise PreconditionError(
            f"A_part <= A_whole fails (min eigenvalue {order_a.residual_min_eigenvalue:.3e})"
        )
    order_b = residual_verdict(B - Bi, tol, solver)
    if not order_b.holds:
        raise PreconditionError(
            f"B_part <= B_whole fails (min eigenvalue {order_b.residual_min_eigenvalue:.3e})"
        )
    residual = matrix_mean(f, A, B, solver) - matrix_mean(f, Ai, Bi, solver)
    return residual_verdict(residual, tol, solver)
