"""Trace-form inequalities for commuting self-adjoint matrices.

Every quantity is computed twice.  The primary value comes from the joint
spectrum: commuting Hermitian matrices share an eigenbasis, so each trace
inequality reduces exactly to its scalar counterpart on the paired
eigenvalue lists.  The matrix-product route (functional calculus plus
explicit products and traces) is then compared against that value as an
internal cross-check; disagreement raises NumericError instead of returning
a silently wrong verdict.  The product route is skipped when a zero weight
makes f blow up there (e.g. 0 * log 0 terms), since only the scalar route
carries the continuity convention.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, NumericError, PreconditionError, SupportError
from .functions import FunctionSpec, log_fn, power_fn, q_log_fn
from .matfun import (
    apply_function,
    commutator_maxnorm,
    hermitize,
    maxnorm,
    psd_inverse,
    spectral_decompose,
)
from .qlog import QLogParams, q_log
from .scalar import (
    DEFAULT_GRID_POINTS,
    DEFAULT_TOLERANCE,
    InequalityVerdict,
    SequencePair,
    generalized_log_sum_gap,
    q_log_sum_gap,
    reverse_log_sum_gap,
)

__all__ = [
    "joint_spectrum",
    "trace_log_sum_gap",
    "exp_log_trace_gap",
    "quantum_relative_entropy",
    "von_neumann_entropy",
    "q_trace_gap",
    "reverse_trace_gap",
]

COMMUTE_RTOL = 1e-9
CROSS_CHECK_RTOL = 1e-9
EXP_LOG_CROSS_RTOL = 1e-8
SUPPORT_ATOL = 1e-14
DENSITY_TRACE_TOL = 1e-10
_CLUSTER_RTOL = 1e-8


def _require_commuting(A: np.ndarray, B: np.ndarray) -> None:
    bound = COMMUTE_RTOL * max(1.0, maxnorm(A) * maxnorm(B))
    drift = commutator_maxnorm(A, B)
    if drift > bound:
        raise PreconditionError(f"matrices do not commute (commutator maxnorm {drift:.3e})")


def joint_spectrum(A, B, solver: str = "eigh") -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Paired eigenvalues (wa, wb) of a commuting Hermitian pair, plus the shared basis U.

    Diagonalizes A, then rediagonalizes B inside each (near-)degenerate
    eigenspace of A, where commutation alone does not pin the basis down.
    """
    dec_a = spectral_decompose(A, solver)
    B = hermitize(B)
    _require_commuting(dec_a.reconstruct(), B)
    wa = dec_a.eigenvalues.copy()
    U = dec_a.unitary.copy()
    Bt = U.conj().T @ B @ U
    n = len(wa)
    gap_tol = _CLUSTER_RTOL * max(1.0, float(np.max(np.abs(wa))))
    wb = np.empty(n)
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and wa[stop] - wa[stop - 1] <= gap_tol:
            stop += 1
        if stop - start == 1:
            wb[start] = Bt[start, start].real
        else:
            block = hermitize(Bt[start:stop, start:stop])
            sub = spectral_decompose(block, solver)
            wb[start:stop] = sub.eigenvalues
            U[:, start:stop] = U[:, start:stop] @ sub.unitary
        start = stop
    # After block rotation the transported B must be diagonal.
    Bd = U.conj().T @ B @ U
    off = maxnorm(Bd - np.diag(np.diag(Bd)))
    if off > 1e-7 * max(1.0, maxnorm(B)):
        raise PreconditionError(
            f"no joint eigenbasis found (off-diagonal leakage {off:.3e}); "
            "inputs are too far from commuting"
        )
    return wa, wb, U


def _cross_check(label: str, primary: float, product_path: float, rtol: float) -> None:
    if abs(product_path - primary) > rtol * max(1.0, abs(primary)):
        raise NumericError(
            f"{label}: matrix-product path {product_path!r} disagrees with "
            f"joint-spectrum value {primary!r}"
        )


def trace_log_sum_gap(
    f: FunctionSpec,
    g: FunctionSpec,
    A,
    B,
    tol: float = DEFAULT_TOLERANCE,
    grid_points: int = DEFAULT_GRID_POINTS,
    solver: str = "eigh",
) -> InequalityVerdict:
    """trace[g(A) f(g(A) g(B)^{-1})] >= trace[g(A)] f(trace g(A)/trace g(B)).

    Requires a commuting pair, g positive on B's spectrum, and x*f(x) convex
    on the ratio interval; all inherited from the scalar forward inequality
    on the joint spectrum.
    """
    wa, wb, _ = joint_spectrum(A, B, solver)
    verdict = generalized_log_sum_gap(f, g, SequencePair(tuple(wa), tuple(wb)), tol, grid_points)

    ga = np.asarray(g(wa), dtype=float)
    ratios = ga / np.asarray(g(wb), dtype=float)
    lo, hi, lo_open = f.domain()
    evaluable = np.all((ratios > lo) if lo_open else (ratios >= lo)) and np.all(ratios <= hi)
    if evaluable:
        gA = apply_function(g, hermitize(A), solver)
        gB = apply_function(g, hermitize(B), solver)
        P = hermitize(gA @ psd_inverse(gB, solver=solver))
        lhs_prod = float(np.trace(gA @ apply_function(f, P, solver)).real)
        _cross_check("trace_log_sum_gap", verdict.lhs, lhs_prod, CROSS_CHECK_RTOL)
        rhs_prod = float(np.trace(gA).real) * float(
            f(float(np.trace(gA).real) / float(np.trace(gB).real))
        )
        _cross_check("trace_log_sum_gap rhs", verdict.rhs, rhs_prod, CROSS_CHECK_RTOL)
    return verdict


def exp_log_trace_gap(
    A,
    B,
    tol: float = DEFAULT_TOLERANCE,
    solver: str = "eigh",
) -> InequalityVerdict:
    """trace(A log A) - trace(A log B) >= trace(A) log(trace A/trace B).

    The f = log, g = identity trace inequality for positive definite
    commuting A, B.  The product-path cross-check recomputes both traces
    through functional calculus (log, matrix product, trace) to 1e-8.
    """
    wa, wb, _ = joint_spectrum(A, B, solver)
    if np.any(wa <= 0.0) or np.any(wb <= 0.0):
        raise PreconditionError("both matrices must be positive definite")
    lhs = float(np.sum(wa * np.log(wa)) - np.sum(wa * np.log(wb)))
    sum_a = float(np.sum(wa))
    sum_b = float(np.sum(wb))
    rhs = sum_a * math.log(sum_a / sum_b)

    LA = apply_function(log_fn(), hermitize(A), solver)
    LB = apply_function(log_fn(), hermitize(B), solver)
    Ah = hermitize(A)
    lhs_prod = float(np.trace(Ah @ LA).real - np.trace(Ah @ LB).real)
    _cross_check("exp_log_trace_gap", lhs, lhs_prod, EXP_LOG_CROSS_RTOL)

    gap = lhs - rhs
    scale = max(1.0, abs(lhs), abs(rhs))
    return InequalityVerdict(lhs, rhs, gap, float(tol), bool(gap >= -tol * scale))


def _require_density(M, what: str, solver: str = "eigh") -> np.ndarray:
    """Eigenvalues of a density matrix (PSD, unit trace), clamped at 0."""
    dec = spectral_decompose(M, solver)
    w = dec.eigenvalues
    if float(w[0]) < -1e-12 * max(1.0, float(np.max(np.abs(w)))):
        raise DomainError(f"{what} is not PSD (min eigenvalue {float(w[0]):.3e})")
    tr = float(np.sum(w))
    if abs(tr - 1.0) > DENSITY_TRACE_TOL:
        raise DomainError(f"{what} must have unit trace, got {tr!r}")
    return np.clip(w, 0.0, None)


def quantum_relative_entropy(rho, sigma, solver: str = "eigh") -> float:
    """D(rho||sigma) = trace[rho (log rho - log sigma)] for commuting states.

    Eigenvalues below 1e-14 count as exact zeros (0*log 0 = 0); rho putting
    weight where sigma vanishes is a support violation (the divergence is
    +infinity) and raises SupportError.
    """
    _require_density(rho, "rho", solver)
    _require_density(sigma, "sigma", solver)
    wr, ws, _ = joint_spectrum(rho, sigma, solver)
    wr = np.clip(wr, 0.0, None)
    ws = np.clip(ws, 0.0, None)
    active = wr > SUPPORT_ATOL
    if np.any(active & (ws <= SUPPORT_ATOL)):
        raise SupportError("rho has weight outside sigma's support; divergence is infinite")
    if not np.any(active):
        return 0.0
    return float(np.sum(wr[active] * (np.log(wr[active]) - np.log(ws[active]))))


def von_neumann_entropy(rho, solver: str = "eigh") -> float:
    """-trace(rho log rho) with the 0*log 0 = 0 convention; lies in [0, log n]."""
    w = _require_density(rho, "rho", solver)
    active = w > SUPPORT_ATOL
    if not np.any(active):
        return 0.0
    return float(-np.sum(w[active] * np.log(w[active])))


def q_trace_gap(
    A,
    B,
    q: float,
    r: float,
    tol: float = DEFAULT_TOLERANCE,
    solver: str = "eigh",
) -> InequalityVerdict:
    """Deformed-log trace inequality for commuting pairs.

    (trace B^r)^(1-q) trace[A^r lnq(A^r B^-r)] vs
    trace(A^r) [lnq(trace A^r) - lnq(trace B^r)], direction by sign of 2 - q.
    """
    wa, wb, _ = joint_spectrum(A, B, solver)
    verdict = q_log_sum_gap(SequencePair(tuple(wa), tuple(wb)), q, r, tol)

    power = power_fn(float(r))
    p = np.asarray(power(wa), dtype=float)
    if np.all(p > 0.0):
        Ar = apply_function(power, hermitize(A), solver)
        Br = apply_function(power, hermitize(B), solver)
        P = hermitize(Ar @ psd_inverse(Br, solver=solver))
        Lq = apply_function(q_log_fn(float(q)), P, solver)
        tr_br = float(np.trace(Br).real)
        lhs_prod = tr_br ** (1.0 - float(q)) * float(np.trace(Ar @ Lq).real)
        _cross_check("q_trace_gap", verdict.lhs, lhs_prod, CROSS_CHECK_RTOL)
        params = QLogParams(float(q))
        tr_ar = float(np.trace(Ar).real)
        rhs_prod = tr_ar * (q_log(tr_ar, params) - q_log(tr_br, params))
        _cross_check("q_trace_gap rhs", verdict.rhs, rhs_prod, CROSS_CHECK_RTOL)
    return verdict


def reverse_trace_gap(
    f: FunctionSpec,
    g: FunctionSpec,
    A,
    B,
    tol: float = DEFAULT_TOLERANCE,
    grid_points: int = DEFAULT_GRID_POINTS,
    solver: str = "eigh",
) -> InequalityVerdict:
    """trace[g(A) f(g(B) g(A)^{-1})] <= trace[g(A)] f(trace g(B)/trace g(A)).

    Reverse direction: needs g positive on both spectra and x*f(1/x) concave
    on the ratio interval, matching the scalar reverse inequality on the
    joint spectrum.
    """
    wa, wb, _ = joint_spectrum(A, B, solver)
    verdict = reverse_log_sum_gap(f, g, SequencePair(tuple(wa), tuple(wb)), tol, grid_points)

    ga = np.asarray(g(wa), dtype=float)
    inv_ratios = np.asarray(g(wb), dtype=float) / ga
    lo, hi, lo_open = f.domain()
    evaluable = np.all((inv_ratios > lo) if lo_open else (inv_ratios >= lo)) and np.all(
        inv_ratios <= hi
    )
    if evaluable:
        gA = apply_function(g, hermitize(A), solver)
        gB = apply_function(g, hermitize(B), solver)
        P = hermitize(gB @ psd_inverse(gA, solver=solver))
        lhs_prod = float(np.trace(gA @ apply_function(f, P, solver)).real)
        _cross_check("reverse_trace_gap", verdict.lhs, lhs_prod, CROSS_CHECK_RTOL)
    return verdict
