#!/usr/bin/env python3
"""Randomized counterexample search over contractive families.

Explores whether perspective superadditivity can fail once the expansivity
hypothesis is replaced by contractivity (all A_i <= I).  Findings are data,
not failures: every reported candidate has survived a re-verification at
tightened absolute tolerance with an independent eigensolver.

Example:
    python3 scripts/search_contractive.py --trials 100000 --seed 7 --dim 3 --m 2
    python3 scripts/search_contractive.py --trials 20000 --lhs-form sum_fb
"""

import argparse
import sys

from logsumineq.harness import TrialConfig, counterexample_search, report_to_json


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=100000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--dim", type=int, default=3)
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument(
        "--lhs-form", choices=["perspective_sum", "sum_fb"], default="perspective_sum",
        help="left-hand side to test: the perspective sum, or the plain sum of f(B_i)",
    )
    ap.add_argument("--report", type=str, default=None)
    args = ap.parse_args()

    cfg = TrialConfig(
        suite="perspective_sum", trials=args.trials, seed=args.seed,
        n=args.dim, m=args.m, family_kind="contractive", lhs_form=args.lhs_form,
    )
    rep = counterexample_search(cfg)
    text = report_to_json(rep)
    sys.stdout.write(text)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stderr.write(
        f"\n{rep.trials} trials, {len(rep.findings)} verified findings, "
        f"worst residual eigenvalue {rep.worst_gap:+.6e}\n"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
