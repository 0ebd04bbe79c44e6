"""Command-line interface.

Subcommands: generate (write a synthetic dataset CSV), estimate (run one
estimator on a dataset CSV), experiment (multi-trial sweep), oracle
(exhaustive minimum-cardinality search on tiny datasets).  Exit codes:
0 success, 2 configuration/input error, 3 method failure under --strict.
"""

import argparse
import json
import sys

from .baselines import (
    FilterConfig,
    coordinate_median,
    geometric_median,
    iterative_filter,
    sample_mean,
)
from .datagen import (
    CorruptedDataset,
    gen_setting_a,
    gen_setting_b,
    recovery_error,
    save_csv,
)
from .errors import SizeLimitError
from .estimator import robust_mean
from .harness import (
    METHODS,
    ExperimentSpec,
    brute_force_l0,
    has_failures,
    ingest_csv,
    parse_config,
    render_csv,
    render_json,
    run_experiment,
    write_results,
)
from .problem import DEFAULT_TAU, MomentBound
from .solvers import IrlsConfig


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="robustmean",
        description="Robust mean estimation under adversarial contamination.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a synthetic dataset CSV")
    gen.add_argument("--setting", required=True, choices=["a", "b"])
    gen.add_argument("--d", type=int, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--alpha", type=float, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)

    est = sub.add_parser("estimate", help="run one estimator on a dataset CSV")
    est.add_argument("--data", required=True)
    est.add_argument("--method", required=True, choices=list(METHODS))
    est.add_argument("--sigma", type=float, default=None)
    est.add_argument("--c1sq", type=float, default=1.5)
    est.add_argument("--p", type=float, default=0.5)
    est.add_argument("--tau", type=float, default=DEFAULT_TAU)
    est.add_argument("--out", default=None)

    exp = sub.add_parser("experiment", help="multi-trial sweep over methods")
    exp.add_argument("--config", default=None,
                     help="flat key=value file; explicit flags win")
    exp.add_argument("--setting", default=None,
                     help="a, b, or a dataset CSV path")
    exp.add_argument("--d", type=int, default=None)
    exp.add_argument("--n", type=int, default=None)
    exp.add_argument("--alpha", type=float, action="append", default=None,
                     help="repeatable")
    exp.add_argument("--trials", type=int, default=None)
    exp.add_argument("--methods", default=None,
                     help="comma-separated subset of " + ",".join(METHODS))
    exp.add_argument("--sigma", type=float, default=None)
    exp.add_argument("--c1sq", type=float, default=None)
    exp.add_argument("--p", type=float, default=None)
    exp.add_argument("--tau", type=float, default=None)
    exp.add_argument("--seed", type=int, default=None)
    exp.add_argument("--out", default=None)
    exp.add_argument("--format", choices=["csv", "json"], default=None)
    exp.add_argument("--strict", action="store_true",
                     help="exit 3 if any method fails on any trial")
    exp.add_argument("--timings", action="store_true",
                     help="record real wall times (breaks byte-identical reruns)")

    orc = sub.add_parser("oracle", help="exhaustive search on a tiny dataset")
    orc.add_argument("--data", required=True)
    orc.add_argument("--sigma", type=float, required=True)
    orc.add_argument("--c1sq", type=float, default=1.5)
    orc.add_argument("--tau", type=float, default=DEFAULT_TAU)
    return parser


def _cmd_generate(args):
    gen = gen_setting_a if args.setting == "a" else gen_setting_b
    ds = gen(args.d, args.n, args.alpha, args.seed)
    save_csv(ds, args.out)
    outliers = int((~ds.inlier_mask).sum())
    print(
        f"wrote {args.out}: setting {ds.setting}, n={args.n}, d={args.d}, "
        f"corrupted rows={outliers}"
    )
    return 0


def _estimate_once(data, method, sigma, c1sq, p, tau):
    if method == "mean":
        return sample_mean(data), {}
    if method == "cmedian":
        return coordinate_median(data), {}
    if method == "gmedian":
        return geometric_median(data), {}
    if method == "filter":
        if sigma is None:
            raise ValueError("--sigma is required for method 'filter'")
        return iterative_filter(data, sigma, FilterConfig()), {}
    if sigma is None:
        raise ValueError(f"--sigma is required for method {method!r}")
    bound = MomentBound(sigma=sigma, n=data.shape[0], c1_squared=c1sq)
    result = robust_mean(
        data, bound, method=method, tau=tau, irls_config=IrlsConfig(p=p)
    )
    extras = {
        "outlier_indices": sorted(result.indicator.support),
        "l0": result.indicator.l0,
        "outer_iterations": result.outer_iterations,
        "termination": result.termination,
        "l0_trace": list(result.l0_trace),
        "rounded_feasibility_gap": result.rounded_feasibility_gap,
    }
    return result.mean, extras


def _cmd_estimate(args):
    data, labels = ingest_csv(args.data)
    estimate, extras = _estimate_once(
        data, args.method, args.sigma, args.c1sq, args.p, args.tau
    )
    payload = {
        "method": args.method,
        "n": int(data.shape[0]),
        "d": int(data.shape[1]),
        "mean": [float(v) for v in estimate],
    }
    payload.update(extras)
    if labels is not None:
        ds = CorruptedDataset(
            data=data, inlier_mask=labels, seed=0, setting="custom"
        )
        payload["recovery_error"] = recovery_error(estimate, ds)
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _pick(cli_value, cfg, key, default, cast):
    if cli_value is not None:
        return cli_value
    if key in cfg:
        raw = cfg[key]
        if isinstance(raw, list):
            return [cast(v) for v in raw]
        return cast(raw)
    return default


def _cmd_experiment(args):
    cfg = parse_config(args.config) if args.config else {}
    setting = _pick(args.setting, cfg, "setting", None, str)
    if setting is None:
        raise ValueError("--setting is required (a, b, or a CSV path)")
    if setting.lower() in ("a", "b"):
        setting = setting.upper()
    methods = args.methods.split(",") if args.methods else None
    methods = _pick(methods, cfg, "methods", list(METHODS), str)
    alphas = _pick(args.alpha, cfg, "alpha", None, float)
    if alphas is None:
        raise ValueError("at least one --alpha is required")
    d = _pick(args.d, cfg, "d", None, int)
    n = _pick(args.n, cfg, "n", None, int)
    if setting in ("A", "B") and (d is None or n is None):
        raise ValueError("--d and --n are required for synthetic settings")
    if d is None or n is None:
        probe, _ = ingest_csv(setting)
        n, d = probe.shape
    spec = ExperimentSpec(
        setting=setting,
        d=d,
        n=n,
        alphas=tuple(alphas if isinstance(alphas, list) else [alphas]),
        trials=_pick(args.trials, cfg, "trials", 20, int),
        methods=tuple(m.strip() for m in methods),
        sigma=_pick(args.sigma, cfg, "sigma", 1.0, float),
        c1_squared=_pick(args.c1sq, cfg, "c1sq", 1.5, float),
        p=_pick(args.p, cfg, "p", 0.5, float),
        tau=_pick(args.tau, cfg, "tau", DEFAULT_TAU, float),
        seed=_pick(args.seed, cfg, "seed", 0, int),
        out=_pick(args.out, cfg, "out", None, str),
        fmt=_pick(args.format, cfg, "format", "csv", str),
        record_timings=args.timings,
    )
    rows = run_experiment(spec)
    if spec.out:
        write_results(rows, spec, spec.out)
    else:
        text = (
            render_csv(rows) if spec.fmt == "csv" else render_json(rows, spec)
        )
        sys.stdout.write(text)
    if args.strict and has_failures(rows):
        print("one or more methods failed; see nan rows", file=sys.stderr)
        return 3
    return 0


def _cmd_oracle(args):
    data, _ = ingest_csv(args.data)
    bound = MomentBound(
        sigma=args.sigma, n=data.shape[0], c1_squared=args.c1sq
    )
    min_l0, support, center = brute_force_l0(data, bound, args.tau)
    payload = {
        "min_l0": min_l0,
        "support": sorted(support),
        "mean": [float(v) for v in center],
    }
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "generate": _cmd_generate,
        "estimate": _cmd_estimate,
        "experiment": _cmd_experiment,
        "oracle": _cmd_oracle,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, SizeLimitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
