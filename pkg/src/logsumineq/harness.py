"""Batch verification suites, deterministic trial seeding, and the
contractive counterexample search.

Trial t of a run uses the rng seeded with (config.seed + t) mod 2**64, and
every generator draw comes from that stream in a fixed order, so a report's
worst_case_seed replays its worst trial exactly:

    run_suite(replace(config, trials=1, seed=report.worst_case_seed))

Search-mode candidates are rebuilt from their trial seed and re-verified
through the independent Jacobi eigensolver at a tightened absolute
tolerance before they are reported as findings.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass

import numpy as np

from . import generators as gen
from .errors import DomainError, PreconditionError
from .functions import identity_fn, log_fn, power_fn, q_log_fn, rational_fn
from .loewner import (
    mean_monotonicity_residual,
    operator_jensen_residual,
    operator_shannon_residual,
    perspective_sum_residual,
    pooled_inverse_residual,
    pooled_mean_residual,
    split_mean_residual,
)
from .scalar import (
    SequencePair,
    convexity_check,
    generalized_log_sum_gap,
    q_log_sum_gap,
    ratio_bounds,
    rational_example_gap,
    reverse_log_sum_gap,
)
from .traceform import (
    exp_log_trace_gap,
    q_trace_gap,
    quantum_relative_entropy,
    reverse_trace_gap,
    trace_log_sum_gap,
    von_neumann_entropy,
)

__all__ = [
    "TrialConfig",
    "SuiteReport",
    "SUITES",
    "run_suite",
    "counterexample_search",
    "report_to_json",
]

_SEED_MOD = 2**64
FAMILY_KINDS = ("expansive", "contractive", "unconstrained")
STRUCTURES = ("commuting", "general")
LHS_FORMS = ("perspective_sum", "sum_fb")
RECHECK_ABS_TOL = 1e-6
_MAX_GENERATION_RETRIES = 100


@dataclass(frozen=True)
class TrialConfig:
    """Knobs for one suite run; every field participates in determinism."""

    suite: str
    trials: int = 1000
    seed: int = 0
    n: int = 4
    m: int = 2
    tolerance: float = 1e-9
    spectrum_range: tuple[float, float] = (0.5, 2.0)
    family_kind: str = "expansive"
    structure: str = "general"
    lhs_form: str = "perspective_sum"

    def __post_init__(self) -> None:
        if not self.suite:
            raise DomainError("suite name must be non-empty")
        if not 1 <= int(self.trials):
            raise DomainError("trials must be >= 1")
        if not 0 <= int(self.seed) < _SEED_MOD:
            raise DomainError("seed must be a 64-bit unsigned integer")
        if not 1 <= int(self.n) <= 64:
            raise DomainError("dimension n must be in [1, 64]")
        if not 1 <= int(self.m) <= 16:
            raise DomainError("family size m must be in [1, 16]")
        if not (np.isfinite(self.tolerance) and self.tolerance > 0):
            raise DomainError("tolerance must be positive")
        lo, hi = self.spectrum_range
        if not (np.isfinite(lo) and np.isfinite(hi) and 0 < lo < hi):
            raise DomainError("spectrum_range must satisfy 0 < lo < hi")
        if self.family_kind not in FAMILY_KINDS:
            raise DomainError(f"family_kind must be one of {FAMILY_KINDS}")
        if self.structure not in STRUCTURES:
            raise DomainError(f"structure must be one of {STRUCTURES}")
        if self.lhs_form not in LHS_FORMS:
            raise DomainError(f"lhs_form must be one of {LHS_FORMS}")
        object.__setattr__(self, "spectrum_range", (float(lo), float(hi)))


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    config: TrialConfig
    trials: int
    violations: int
    generation_retries: int
    worst_gap: float
    worst_case_seed: int
    wall_time: float
    findings: tuple[dict, ...] = ()


@dataclass(frozen=True)
class TrialOutcome:
    gap: float
    holds: bool
    retries: int = 0
    detail: dict | None = None


def _trial_seed(config: TrialConfig, index: int) -> int:
    return (int(config.seed) + index) % _SEED_MOD


def _size(rng: np.random.Generator, cap: int) -> int:
    return int(rng.integers(1, cap + 1))


def _retry(build, rng):
    """Regenerate on precondition failures; the retries are counted, never hidden."""
    retries = 0
    while True:
        try:
            return build(rng), retries
        except PreconditionError:
            retries += 1
            if retries >= _MAX_GENERATION_RETRIES:
                raise


# -- scalar suites ---------------------------------------------------------


def _suite_scalar_log_sum(rng, config):
    pair = gen.rand_sequence_pair(rng, _size(rng, config.n))
    v = generalized_log_sum_gap(log_fn(), identity_fn(), pair, config.tolerance)
    return TrialOutcome(v.gap, v.holds)


def _suite_scalar_equality(rng, config):
    n = _size(rng, config.n)
    b = gen.rand_sequence(rng, n)
    c = rng.uniform(0.1, 10.0)
    pair = SequencePair(tuple(c * b), tuple(b))
    v = generalized_log_sum_gap(log_fn(), identity_fn(), pair, config.tolerance)
    scale = max(1.0, abs(v.lhs), abs(v.rhs))
    return TrialOutcome(-abs(v.gap), abs(v.gap) <= config.tolerance * scale)


def _suite_scalar_reverse(rng, config):
    pair = gen.rand_sequence_pair(rng, _size(rng, config.n))
    v = reverse_log_sum_gap(log_fn(), identity_fn(), pair, config.tolerance)
    return TrialOutcome(v.gap, v.holds)


def _suite_rational_reverse(rng, config):
    n = _size(rng, config.n)
    a = rng.uniform(1.0, 10.0, n)
    ratios = rng.uniform(0.9, 2.4, n)
    pair = SequencePair(tuple(a), tuple(ratios * a))
    v = rational_example_gap(pair, config.tolerance)
    return TrialOutcome(v.gap, v.holds)


def _draw_q(rng) -> float:
    # Stay off the q = 2 degeneracy where the inequality has no direction.
    if rng.random() < 0.7:
        return float(rng.uniform(-2.0, 1.9))
    return float(rng.uniform(2.1, 3.5))


def _suite_q_log_sum(rng, config):
    pair = gen.rand_sequence_pair(rng, _size(rng, config.n))
    q = _draw_q(rng)
    r = float(rng.uniform(0.5, 2.0))
    v = q_log_sum_gap(pair, q, r, config.tolerance)
    return TrialOutcome(v.gap, v.holds)


def _suite_q_direction(rng, config):
    pair = gen.rand_sequence_pair(rng, _size(rng, config.n))
    worst = math.inf
    holds = True
    for q in (0.0, 0.5, 1.5, 2.5, 3.0):
        v = q_log_sum_gap(pair, q, 1.0, config.tolerance)
        worst = min(worst, v.gap)
        holds = holds and v.holds
    return TrialOutcome(worst, holds)


def _suite_ratio_bounds(rng, config):
    pair = gen.rand_sequence_pair(rng, _size(rng, config.n))
    g = identity_fn() if rng.random() < 0.5 else power_fn(2.0)
    rb = ratio_bounds(g, pair)
    ga = np.asarray(g(np.asarray(pair.a)), dtype=float)
    gb = np.asarray(g(np.asarray(pair.b)), dtype=float)
    agg = float(ga.sum() / gb.sum())
    tol = config.tolerance * max(1.0, abs(rb.m_g), abs(rb.M_g))
    holds = rb.m_g <= rb.M_g + tol and rb.m_g - tol <= agg <= rb.M_g + tol
    gap = min(rb.M_g - rb.m_g, agg - rb.m_g, rb.M_g - agg)
    return TrialOutcome(gap, holds)


def _suite_convexity_check(rng, config):
    case = int(rng.integers(4))
    if case == 0:
        ok = convexity_check("xfx", log_fn(), (0.05 + 0.1 * rng.random(), 10.0), 101)
        expected = True
    elif case == 1:
        ok = convexity_check("xfx", q_log_fn(float(rng.uniform(2.05, 4.0))), (0.1, 10.0), 101)
        expected = False
    elif case == 2:
        ok = convexity_check(
            "xf1overx", rational_fn(), (float(rng.uniform(0.42, 0.6)), float(rng.uniform(5, 10))), 201
        )
        expected = True
    else:
        ok = convexity_check("xfx", power_fn(float(rng.uniform(0.2, 2.0))), (0.01, 5.0), 101)
        expected = True
    agree = ok == expected
    return TrialOutcome(0.0 if agree else -1.0, agree)


# -- trace suites ----------------------------------------------------------


def _commuting_pd_pair(rng, config, hi: float = 10.0):
    n = _size(rng, config.n)
    return gen.rand_commuting_pair(rng, n, (1e-2, hi), (1e-2, hi))


def _suite_trace_log_sum(rng, config):
    A, B = _commuting_pd_pair(rng, config)
    v = trace_log_sum_gap(log_fn(), identity_fn(), A, B, config.tolerance)
    return TrialOutcome(v.gap, v.holds)


def _suite_trace_reverse(rng, config):
    A, B = _commuting_pd_pair(rng, config)
    v = reverse_trace_gap(log_fn(), identity_fn(), A, B, config.tolerance)
    return TrialOutcome(v.gap, v.holds)


def _suite_q_trace(rng, config):
    A, B = _commuting_pd_pair(rng, config)
    v = q_trace_gap(A, B, _draw_q(rng), float(rng.uniform(0.5, 2.0)), config.tolerance)
    return TrialOutcome(v.gap, v.holds)


def _suite_exp_log_trace(rng, config):
    A, B = _commuting_pd_pair(rng, config)
    v = exp_log_trace_gap(A, B, config.tolerance)
    return TrialOutcome(v.gap, v.holds)


def _suite_relative_entropy(rng, config):
    rho, sigma = gen.rand_density_pair(rng, _size(rng, config.n))
    d = quantum_relative_entropy(rho, sigma)
    return TrialOutcome(d, d >= -config.tolerance)


def _suite_entropy_bound(rng, config):
    n = _size(rng, config.n)
    s = von_neumann_entropy(gen.rand_density(rng, n))
    margin = min(s, math.log(n) - s)
    return TrialOutcome(margin, margin >= -config.tolerance)


# -- operator-order suites --------------------------------------------------


def _suite_operator_jensen(rng, config):
    n = _size(rng, config.n)
    C = gen.rand_contraction(rng, n)
    X = gen.rand_psd(rng, n, scale=2.0)
    v = operator_jensen_residual(power_fn(0.5), C, X, config.tolerance)
    return TrialOutcome(v.residual_min_eigenvalue, v.holds)


def _concave_f(rng):
    pick = int(rng.integers(3))
    if pick == 0:
        return power_fn(0.5)
    if pick == 1:
        return log_fn()
    return q_log_fn(float(rng.uniform(0.0, 2.0)))


def _perspective_families(rng, config):
    m = _size(rng, config.m)
    n = _size(rng, config.n)
    As = gen.rand_pd_family(rng, m, n, config.spectrum_range, config.family_kind)
    Bs = gen.rand_pd_family(rng, m, n, config.spectrum_range, "unconstrained")
    return As, Bs


def _suite_perspective_sum(rng, config):
    (As, Bs), retries = _retry(lambda r: _perspective_families(r, config), rng)
    f = _concave_f(rng)
    v = perspective_sum_residual(
        f,
        As,
        Bs,
        lhs_form=config.lhs_form,
        require_expansive=config.family_kind == "expansive",
        tol=config.tolerance,
    )
    return TrialOutcome(v.residual_min_eigenvalue, v.holds, retries)


def _suite_operator_shannon(rng, config):
    m = _size(rng, config.m)
    n = _size(rng, config.n)
    As = [gen.rand_expansive(rng, n) for _ in range(m)]
    Bs = gen.rand_split_matching(rng, sum(As), m, config.spectrum_range)
    f = _concave_f(rng)
    if f.family == "power":
        f = power_fn(0.5, offset=-1.0)  # pin f(1) = 0
    v = operator_shannon_residual(As, Bs, f, config.tolerance)
    return TrialOutcome(v.residual_min_eigenvalue, v.holds)


def _suite_pooled_inverse(rng, config):
    m = _size(rng, config.m)
    n = _size(rng, config.n)
    As = gen.rand_pd_family(rng, m, n, config.spectrum_range, "unconstrained")
    Xs = [gen.rand_square(rng, n) for _ in range(m)]
    v = pooled_inverse_residual(Xs, As, config.tolerance)
    return TrialOutcome(v.residual_min_eigenvalue, v.holds)


def _mean_families(rng, config):
    m = _size(rng, config.m)
    n = _size(rng, config.n)
    As = gen.rand_pd_family(rng, m, n, config.spectrum_range, "unconstrained")
    Bs = gen.rand_pd_family(rng, m, n, config.spectrum_range, "unconstrained")
    return As, Bs


def _suite_pooled_mean(rng, config):
    As, Bs = _mean_families(rng, config)
    v = pooled_mean_residual(power_fn(0.5), As, Bs, config.tolerance)
    return TrialOutcome(v.residual_min_eigenvalue, v.holds)


def _suite_split_mean(rng, config):
    As, Bs = _mean_families(rng, config)
    v = split_mean_residual(power_fn(0.5), As, Bs, config.tolerance)
    return TrialOutcome(v.residual_min_eigenvalue, v.holds)


def _suite_mean_monotonicity(rng, config):
    n = _size(rng, config.n)
    A_part = gen.rand_pd(rng, n, config.spectrum_range)
    B_part = gen.rand_pd(rng, n, config.spectrum_range)
    A_whole = A_part + gen.rand_psd(rng, n, scale=float(rng.uniform(0.1, 1.0)))
    B_whole = B_part + gen.rand_pd(rng, n, (0.05, 0.5))
    v = mean_monotonicity_residual(power_fn(0.5), A_part, B_part, A_whole, B_whole, config.tolerance)
    return TrialOutcome(v.residual_min_eigenvalue, v.holds)


SUITES = {
    "scalar_log_sum": _suite_scalar_log_sum,
    "scalar_equality": _suite_scalar_equality,
    "scalar_reverse": _suite_scalar_reverse,
    "rational_reverse": _suite_rational_reverse,
    "q_log_sum": _suite_q_log_sum,
    "q_direction": _suite_q_direction,
    "ratio_bounds": _suite_ratio_bounds,
    "convexity_check": _suite_convexity_check,
    "trace_log_sum": _suite_trace_log_sum,
    "trace_reverse": _suite_trace_reverse,
    "q_trace": _suite_q_trace,
    "exp_log_trace": _suite_exp_log_trace,
    "relative_entropy": _suite_relative_entropy,
    "entropy_bound": _suite_entropy_bound,
    "operator_jensen": _suite_operator_jensen,
    "perspective_sum": _suite_perspective_sum,
    "operator_shannon": _suite_operator_shannon,
    "pooled_inverse": _suite_pooled_inverse,
    "pooled_mean": _suite_pooled_mean,
    "split_mean": _suite_split_mean,
    "mean_monotonicity": _suite_mean_monotonicity,
}


def run_suite(config: TrialConfig) -> SuiteReport:
    """Execute config.trials seeded trials of one registered suite."""
    if config.suite not in SUITES:
        raise DomainError(
            f"unknown suite {config.suite!r}; registered: {', '.join(sorted(SUITES))}"
        )
    suite_fn = SUITES[config.suite]
    start = time.perf_counter()
    violations = 0
    retries = 0
    worst_gap = math.inf
    worst_seed = _trial_seed(config, 0)
    for index in range(config.trials):
        ts = _trial_seed(config, index)
        outcome = suite_fn(np.random.default_rng(ts), config)
        retries += outcome.retries
        if not outcome.holds:
            violations += 1
        if outcome.gap < worst_gap:
            worst_gap = outcome.gap
            worst_seed = ts
    return SuiteReport(
        suite=config.suite,
        config=config,
        trials=config.trials,
        violations=violations,
        generation_retries=retries,
        worst_gap=float(worst_gap),
        worst_case_seed=worst_seed,
        wall_time=time.perf_counter() - start,
    )


def _search_trial(trial_seed: int, config: TrialConfig, solver: str):
    """Rebuild and evaluate one contractive-search instance from its seed."""
    rng = np.random.default_rng(trial_seed)
    m = _size(rng, config.m)
    n = _size(rng, config.n)
    As = [gen.rand_contractive_pd(rng, n) for _ in range(m)]
    Bs = gen.rand_pd_family(rng, m, n, config.spectrum_range, "unconstrained")
    f = _concave_f(rng)
    verdict = perspective_sum_residual(
        f,
        As,
        Bs,
        lhs_form=config.lhs_form,
        require_expansive=False,
        tol=config.tolerance,
        solver=solver,
    )
    return verdict, {"n": n, "m": m, "f": f.label()}


def counterexample_search(config: TrialConfig) -> SuiteReport:
    """Probe the perspective-sum inequality on contractive families.

    The expansivity hypothesis is deliberately dropped; whether the
    inequality can fail without it is an open question, so the report
    carries findings (re-verified candidates) and no pass/fail claim.
    """
    if config.family_kind != "contractive":
        raise DomainError("counterexample_search requires family_kind='contractive'")
    start = time.perf_counter()
    findings: list[dict] = []
    worst_gap = math.inf
    worst_seed = _trial_seed(config, 0)
    for index in range(config.trials):
        ts = _trial_seed(config, index)
        verdict, meta = _search_trial(ts, config, "eigh")
        if verdict.residual_min_eigenvalue < worst_gap:
            worst_gap = verdict.residual_min_eigenvalue
            worst_seed = ts
        if not verdict.holds:
            recheck, _ = _search_trial(ts, config, "jacobi")
            if recheck.residual_min_eigenvalue < -RECHECK_ABS_TOL:
                findings.append(
                    {
                        "trial_index": index,
                        "seed": ts,
                        "n": meta["n"],
                        "m": meta["m"],
                        "f": meta["f"],
                        "lhs_form": config.lhs_form,
                        "first_min_eigenvalue": verdict.residual_min_eigenvalue,
                        "recheck_min_eigenvalue": recheck.residual_min_eigenvalue,
                    }
                )
    return SuiteReport(
        suite="contractive_search",
        config=config,
        trials=config.trials,
        violations=len(findings),
        generation_retries=0,
        worst_gap=float(worst_gap),
        worst_case_seed=worst_seed,
        wall_time=time.perf_counter() - start,
        findings=tuple(findings),
    )


def report_to_json(report: SuiteReport) -> str:
    cfg = report.config
    payload = {
        "suite": report.suite,
        "config": {
            "suite": cfg.suite,
            "trials": cfg.trials,
            "seed": cfg.seed,
            "n": cfg.n,
            "m": cfg.m,
            "tolerance": cfg.tolerance,
            "spectrum_range": list(cfg.spectrum_range),
            "family_kind": cfg.family_kind,
            "structure": cfg.structure,
            "lhs_form": cfg.lhs_form,
        },
        "trials": report.trials,
        "violations": report.violations,
        "generation_retries": report.generation_retries,
        "worst_gap": report.worst_gap,
        "worst_case_seed": report.worst_case_seed,
        "findings": list(report.findings),
        "wall_time": report.wall_time,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
