#!/usr/bin/env python3
"""Sample-size sweep at a fixed corruption rate.

Runs the chosen methods on two-cluster data for each sample count and
emits one combined CSV table; recovery error should fall as n grows.
"""

import argparse
import sys

from robustmean import ExperimentSpec, run_experiment
from robustmean.harness import render_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=int, default=100)
    ap.add_argument("--n", type=int, action="append", default=None,
                    help="repeatable; default 200 500 1000 2000")
    ap.add_argument("--alpha", type=float, default=0.2)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--methods", default="l1,lp")
    ap.add_argument("--sigma", type=float, default=1.0)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    counts = args.n if args.n else [200, 500, 1000, 2000]
    rows = []
    for n in counts:
        spec = ExperimentSpec(
            setting="B", d=args.d, n=n, alphas=(args.alpha,),
            trials=args.trials,
            methods=tuple(m.strip() for m in args.methods.split(",")),
            sigma=args.sigma, seed=args.seed,
        )
        rows.extend(run_experiment(spec))
    text = render_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
