"""Command line front-end.

    logsumineq check  --suite scalar_log_sum --trials 10000 --seed 42
    logsumineq search --mode contractive --trials 100000 --seed 7 --dim 3 --m 2
    logsumineq eval   --op trace_log_sum_gap --input instance.json

Exit codes: 0 no violations, 1 violations found, 2 usage or config error,
3 numeric failure (e.g. eigensolver non-convergence).

eval reads one JSON document whose matrix-valued entries use the exchange
format {"n": int, "re": [[...]], "im": [[...]]}; scalar function arguments
are {"family": name, "param": x, "offset": y}; sequence pairs are
{"a": [...], "b": [...]}; families are lists of exchange matrices.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import loewner, matfun, scalar, traceform
from .errors import DomainError, NumericError
from .functions import FunctionSpec
from .harness import SUITES, SuiteReport, TrialConfig, counterexample_search, report_to_json, run_suite
from .matio import matrix_from_obj, matrix_to_obj
from .qlog import QLogParams, q_log, q_log_product, q_log_quotient, q_log_reciprocal
from .scalar import InequalityVerdict, RatioBounds, SequencePair

__all__ = ["main"]


# -- eval input parsing ------------------------------------------------------


def _need(doc: dict, key: str):
    if key not in doc:
        raise DomainError(f"input document is missing field {key!r}")
    return doc[key]


def _get_matrix(doc, key):
    return matrix_from_obj(_need(doc, key))


def _get_family(doc, key):
    objs = _need(doc, key)
    if not isinstance(objs, list) or not objs:
        raise DomainError(f"field {key!r} must be a non-empty list of matrices")
    return [matrix_from_obj(o) for o in objs]


def _get_fn(doc, key) -> FunctionSpec:
    obj = _need(doc, key)
    if not isinstance(obj, dict) or "family" not in obj:
        raise DomainError(f"field {key!r} must be an object with a 'family' name")
    grid = obj.get("grid")
    if grid is not None:
        grid = (tuple(map(float, grid[0])), tuple(map(float, grid[1])))
    return FunctionSpec(
        family=str(obj["family"]),
        param=None if obj.get("param") is None else float(obj["param"]),
        offset=float(obj.get("offset", 0.0)),
        grid=grid,
        limit_window=float(obj.get("limit_window", 1e-9)),
    )


def _get_pair(doc, key) -> SequencePair:
    obj = _need(doc, key)
    if not isinstance(obj, dict) or "a" not in obj or "b" not in obj:
        raise DomainError(f"field {key!r} must be an object with lists 'a' and 'b'")
    return SequencePair(tuple(map(float, obj["a"])), tuple(map(float, obj["b"])))


def _get_float(doc, key):
    return float(_need(doc, key))


def _qparams(doc) -> QLogParams:
    return QLogParams(_get_float(doc, "q"), float(doc.get("limit_window", 1e-9)))


def _tol(doc) -> float:
    return float(doc.get("tol", 1e-9))


EVAL_OPS = {
    "q_log": lambda d: q_log(_get_float(d, "x"), _qparams(d)),
    "q_log_product": lambda d: q_log_product(_get_float(d, "x"), _get_float(d, "y"), _qparams(d)),
    "q_log_quotient": lambda d: q_log_quotient(_get_float(d, "x"), _get_float(d, "y"), _qparams(d)),
    "q_log_reciprocal": lambda d: q_log_reciprocal(_get_float(d, "y"), _qparams(d)),
    "ratio_bounds": lambda d: scalar.ratio_bounds(_get_fn(d, "g"), _get_pair(d, "pair")),
    "convexity_check": lambda d: scalar.convexity_check(
        str(_need(d, "h_kind")),
        _get_fn(d, "f"),
        (float(_need(d, "interval")[0]), float(_need(d, "interval")[1])),
        int(d.get("grid_points", 101)),
    ),
    "generalized_log_sum_gap": lambda d: scalar.generalized_log_sum_gap(
        _get_fn(d, "f"), _get_fn(d, "g"), _get_pair(d, "pair"), _tol(d)
    ),
    "reverse_log_sum_gap": lambda d: scalar.reverse_log_sum_gap(
        _get_fn(d, "f"), _get_fn(d, "g"), _get_pair(d, "pair"), _tol(d)
    ),
    "rational_example_gap": lambda d: scalar.rational_example_gap(_get_pair(d, "pair"), _tol(d)),
    "q_log_sum_gap": lambda d: scalar.q_log_sum_gap(
        _get_pair(d, "pair"), _get_float(d, "q"), _get_float(d, "r"), _tol(d)
    ),
    "hermitize": lambda d: matfun.hermitize(_get_matrix(d, "M")),
    "spectral_decompose": lambda d: matfun.spectral_decompose(
        _get_matrix(d, "A"), str(d.get("solver", "eigh"))
    ),
    "apply_function": lambda d: matfun.apply_function(_get_fn(d, "f"), _get_matrix(d, "A")),
    "loewner_leq": lambda d: matfun.loewner_leq(_get_matrix(d, "A"), _get_matrix(d, "B"), _tol(d)),
    "make_commuting_pair": lambda d: matfun.make_commuting_pair(
        _get_matrix(d, "U"),
        [float(v) for v in _need(d, "lambda_a")],
        [float(v) for v in _need(d, "lambda_b")],
    ),
    "psd_inverse": lambda d: matfun.psd_inverse(
        _get_matrix(d, "A"), None if d.get("floor") is None else float(d["floor"])
    ),
    "psd_sqrt": lambda d: matfun.psd_sqrt(_get_matrix(d, "A")),
    "trace_log_sum_gap": lambda d: traceform.trace_log_sum_gap(
        _get_fn(d, "f"), _get_fn(d, "g"), _get_matrix(d, "A"), _get_matrix(d, "B"), _tol(d)
    ),
    "exp_log_trace_gap": lambda d: traceform.exp_log_trace_gap(
        _get_matrix(d, "A"), _get_matrix(d, "B"), _tol(d)
    ),
    "quantum_relative_entropy": lambda d: traceform.quantum_relative_entropy(
        _get_matrix(d, "rho"), _get_matrix(d, "sigma")
    ),
    "von_neumann_entropy": lambda d: traceform.von_neumann_entropy(_get_matrix(d, "rho")),
    "q_trace_gap": lambda d: traceform.q_trace_gap(
        _get_matrix(d, "A"), _get_matrix(d, "B"), _get_float(d, "q"), _get_float(d, "r"), _tol(d)
    ),
    "reverse_trace_gap": lambda d: traceform.reverse_trace_gap(
        _get_fn(d, "f"), _get_fn(d, "g"), _get_matrix(d, "A"), _get_matrix(d, "B"), _tol(d)
    ),
    "operator_jensen_residual": lambda d: loewner.operator_jensen_residual(
        _get_fn(d, "f"), _get_matrix(d, "contraction"), _get_matrix(d, "X"), _tol(d)
    ),
    "perspective_sum_residual": lambda d: loewner.perspective_sum_residual(
        _get_fn(d, "f"),
        _get_family(d, "A_family"),
        _get_family(d, "B_family"),
        lhs_form=str(d.get("lhs_form", "perspective_sum")),
        require_expansive=bool(d.get("require_expansive", True)),
        tol=_tol(d),
    ),
    "perspective_identity_gap": lambda d: loewner.perspective_identity_gap(
        _get_fn(d, "f"), _get_matrix(d, "A"), _get_matrix(d, "B")
    ),
    "operator_shannon_residual": lambda d: loewner.operator_shannon_residual(
        _get_family(d, "A_family"), _get_family(d, "B_family"), _get_fn(d, "f"), _tol(d)
    ),
    "pooled_inverse_residual": lambda d: loewner.pooled_inverse_residual(
        _get_family(d, "X_family"), _get_family(d, "A_family"), _tol(d)
    ),
    "matrix_mean": lambda d: loewner.matrix_mean(
        _get_fn(d, "f"), _get_matrix(d, "A"), _get_matrix(d, "B")
    ),
    "pooled_mean_residual": lambda d: loewner.pooled_mean_residual(
        _get_fn(d, "f"), _get_family(d, "A_family"), _get_family(d, "B_family"), _tol(d)
    ),
    "split_mean_residual": lambda d: loewner.split_mean_residual(
        _get_fn(d, "f"), _get_family(d, "A_family"), _get_family(d, "B_family"), _tol(d)
    ),
    "mean_monotonicity_residual": lambda d: loewner.mean_monotonicity_residual(
        _get_fn(d, "f"),
        _get_matrix(d, "A_part"),
        _get_matrix(d, "B_part"),
        _get_matrix(d, "A_whole"),
        _get_matrix(d, "B_whole"),
        _tol(d),
    ),
}


def _render(result):
    if isinstance(result, InequalityVerdict):
        return {
            "lhs": result.lhs,
            "rhs": result.rhs,
            "gap": result.gap,
            "tolerance": result.tolerance,
            "holds": result.holds,
        }
    if isinstance(result, matfun.LoewnerVerdict):
        return {
            "residual_min_eigenvalue": result.residual_min_eigenvalue,
            "residual_norm": result.residual_norm,
            "tolerance": result.tolerance,
            "holds": result.holds,
        }
    if isinstance(result, RatioBounds):
        return {"m_g": result.m_g, "M_g": result.M_g}
    if isinstance(result, matfun.SpectralDecomposition):
        return {
            "eigenvalues": [float(v) for v in result.eigenvalues],
            "unitary": matrix_to_obj(result.unitary),
        }
    if isinstance(result, np.ndarray):
        return matrix_to_obj(result)
    if isinstance(result, tuple) and len(result) == 2 and isinstance(result[0], np.ndarray):
        return {"A": matrix_to_obj(result[0]), "B": matrix_to_obj(result[1])}
    if isinstance(result, (bool, np.bool_)):
        return {"value": bool(result)}
    if isinstance(result, (int, float, np.floating)):
        return {"value": float(result)}
    raise NumericError(f"cannot render result of type {type(result).__name__}")


# -- subcommands -------------------------------------------------------------


def _emit_report(report: SuiteReport, path: str | None) -> None:
    text = report_to_json(report)
    sys.stdout.write(text)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_check(args) -> int:
    config = TrialConfig(
        suite=args.suite,
        trials=args.trials,
        seed=args.seed,
        n=args.dim,
        m=args.m,
        tolerance=args.tol,
        spectrum_range=(args.spectrum_lo, args.spectrum_hi),
        family_kind=args.generator,
    )
    report = run_suite(config)
    _emit_report(report, args.report)
    return 1 if report.violations else 0


def _cmd_search(args) -> int:
    config = TrialConfig(
        suite="perspective_sum",
        trials=args.trials,
        seed=args.seed,
        n=args.dim,
        m=args.m,
        tolerance=args.tol,
        spectrum_range=(args.spectrum_lo, args.spectrum_hi),
        family_kind="contractive",
        lhs_form=args.lhs_form,
    )
    report = counterexample_search(config)
    _emit_report(report, args.report)
    # Search explores an open question: findings are data, not failures.
    return 0


def _cmd_eval(args) -> int:
    if args.op not in EVAL_OPS:
        raise DomainError(f"unknown op {args.op!r}; available: {', '.join(sorted(EVAL_OPS))}")
    with open(args.input, encoding="utf-8") as fh:
        doc = json.load(fh)
    rendered = _render(EVAL_OPS[args.op](doc))
    sys.stdout.write(json.dumps(rendered, indent=2, sort_keys=True) + "\n")
    if "holds" in rendered and not rendered["holds"]:
        return 1
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logsumineq",
        description="Verify scalar, trace-form, and operator-order log-sum inequalities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_trials, default_dim, default_m):
        p.add_argument("--trials", type=int, default=default_trials)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--dim", type=int, default=default_dim)
        p.add_argument("--m", type=int, default=default_m)
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--spectrum-lo", type=float, default=0.5)
        p.add_argument("--spectrum-hi", type=float, default=2.0)
        p.add_argument("--report", type=str, default=None, help="also write the JSON report here")

    p_check = sub.add_parser("check", help="run a registered verification suite")
    p_check.add_argument("--suite", required=True, choices=sorted(SUITES))
    common(p_check, 1000, 4, 2)
    p_check.add_argument(
        "--generator",
        choices=["expansive", "contractive", "unconstrained"],
        default="expansive",
        help="matrix family kind for the operator suites",
    )
    p_check.set_defaults(fn=_cmd_check)

    p_search = sub.add_parser("search", help="contractive counterexample search (no pass/fail)")
    p_search.add_argument("--mode", required=True, choices=["contractive"])
    common(p_search, 10000, 3, 2)
    p_search.add_argument(
        "--lhs-form", choices=["perspective_sum", "sum_fb"], default="perspective_sum"
    )
    p_search.set_defaults(fn=_cmd_search)

    p_eval = sub.add_parser("eval", help="evaluate one operation on a JSON input document")
    p_eval.add_argument("--op", required=True)
    p_eval.add_argument("--input", required=True)
    p_eval.set_defaults(fn=_cmd_eval)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except NumericError as exc:
        sys.stderr.write(f"numeric failure: {exc}\n")
        return 3
    except (DomainError, ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
