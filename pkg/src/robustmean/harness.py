"""Experiment runner: multi-trial sweeps, table emission, test oracles.

run_experiment is a pure function of its ExperimentSpec: datasets are
regenerated from (seed + trial) for every method so all methods see
bitwise-identical samples, rows are ordered deterministically, and
timing capture is off by default so that identical specs produce
byte-identical output files.
"""

import itertools
import json
import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from .baselines import (
    FilterConfig,
    coordinate_median,
    geometric_median,
    iterative_filter,
    sample_mean,
)
from .datagen import CorruptedDataset, gen_setting_a, gen_setting_b, recovery_error
from .errors import SizeLimitError, TraceInvariantError
from .estimator import robust_mean
from .problem import DEFAULT_TAU, MomentBound
from .solvers import IrlsConfig

METHODS = ("mean", "cmedian", "gmedian", "filter", "l1", "lp")
BRUTE_FORCE_MAX_N = 14
RESULT_HEADER = "method,alpha,d,n,trial,recovery_error,outer_iterations,wall_time_ms"


@dataclass(frozen=True)
class ExperimentSpec:
    """Complete description of one experiment sweep.

    setting is "A", "B", or a path to a dataset CSV (in which case d, n,
    and alphas describe the file and no generation happens).  Output is
    deterministic given the spec; set record_timings=True to capture real
    wall times at the cost of byte-identical reruns.
    """

    setting: str
    d: int
    n: int
    alphas: tuple
    trials: int = 20
    methods: tuple = METHODS
    sigma: float = 1.0
    c1_squared: float = 1.5
    p: float = 0.5
    tau: float = DEFAULT_TAU
    seed: int = 0
    out: str = None
    fmt: str = "csv"
    record_timings: bool = False

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(float(a) for a in self.alphas))
        object.__setattr__(self, "methods", tuple(self.methods))
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not self.alphas:
            raise ValueError("at least one alpha is required")
        if any(not 0.0 <= a < 0.5 for a in self.alphas):
            raise ValueError("alphas must lie in [0, 0.5)")
        if not self.methods:
            raise ValueError("at least one method is required")
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown:
            raise ValueError(f"unknown methods: {unknown}")
        if self.fmt not in ("csv", "json"):
            raise ValueError("fmt must be 'csv' or 'json'")


@dataclass(frozen=True)
class ResultRow:
    """One line of the output table; trial is an index or 'mean'."""

    method: str
    alpha: float
    d: int
    n: int
    trial: object
    recovery_error: float
    outer_iterations: float
    wall_time_ms: float


def _generate(spec, alpha, trial):
    seed = spec.seed + trial
    if spec.setting == "A":
        return gen_setting_a(spec.d, spec.n, alpha, seed)
    if spec.setting == "B":
        return gen_setting_b(spec.d, spec.n, alpha, seed)
    data, labels = ingest_csv(spec.setting)
    if labels is None:
        raise ValueError(
            "dataset CSV has no is_inlier column; recovery error is undefined"
        )
    return CorruptedDataset(
        data=data, inlier_mask=labels, seed=seed, setting="custom"
    )


def _run_method(method, ds, spec):
    """Returns (estimate, outer_iterations) for one method on one dataset."""
    data = ds.data
    if method == "mean":
        return sample_mean(data), 0
    if method == "cmedian":
        return coordinate_median(data), 0
    if method == "gmedian":
        return geometric_median(data), 0
    if method == "filter":
        return iterative_filter(data, spec.sigma, FilterConfig()), 0
    bound = MomentBound(
        sigma=spec.sigma, n=data.shape[0], c1_squared=spec.c1_squared
    )
    result = robust_mean(
        data,
        bound,
        method=method,
        tau=spec.tau,
        irls_config=IrlsConfig(p=spec.p),
    )
    trace = result.l0_trace
    if any(b >= a for a, b in zip(trace, trace[1:])):
        raise TraceInvariantError(
            f"indicator count failed to strictly decrease: {trace}"
        )
    return result.mean, result.outer_iterations


def run_experiment(spec):
    """Execute the sweep and return trial rows plus per-cell mean rows.

    A method failure is recorded as a row with recovery_error = nan (the
    error flag) and the sweep continues; the nan propagates into that
    cell's mean row.  Rows are ordered by (method, alpha, trial) with the
    aggregate row directly after its trials.
    """
    rows = []
    ordered = [m for m in METHODS if m in spec.methods]
    for method, alpha in itertools.product(ordered, spec.alphas):
        errors = []
        iters = []
        walls = []
        for trial in range(spec.trials):
            ds = _generate(spec, alpha, trial)
            start = time.perf_counter() if spec.record_timings else 0.0
            try:
                estimate, outer = _run_method(method, ds, spec)
                err = recovery_error(estimate, ds)
            except TraceInvariantError:
                raise  # termination-guarantee violation is never swallowed
            except (ValueError, ArithmeticError, RuntimeError) as exc:
                warnings.warn(
                    f"{method} failed on alpha={alpha} trial={trial}: {exc}",
                    RuntimeWarning,
                )
                err, outer = float("nan"), 0
            wall = (
                (time.perf_counter() - start) * 1e3
                if spec.record_timings
                else 0.0
            )
            errors.append(err)
            iters.append(float(outer))
            walls.append(wall)
            rows.append(
                ResultRow(
                    method=method,
                    alpha=alpha,
                    d=spec.d,
                    n=spec.n,
                    trial=trial,
                    recovery_error=err,
                    outer_iterations=outer,
                    wall_time_ms=wall,
                )
            )
        rows.append(
            ResultRow(
                method=method,
                alpha=alpha,
                d=spec.d,
                n=spec.n,
                trial="mean",
                recovery_error=sum(errors) / len(errors),
                outer_iterations=sum(iters) / len(iters),
                wall_time_ms=sum(walls) / len(walls),
            )
        )
    return rows


def has_failures(rows):
    """True when any trial row carries the nan error flag."""
    return any(
        row.trial != "mean" and np.isnan(row.recovery_error) for row in rows
    )


def _cell(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_csv(rows):
    lines = [RESULT_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                [
                    r.method,
                    _cell(r.alpha),
                    str(r.d),
                    str(r.n),
                    str(r.trial),
                    _cell(r.recovery_error),
                    _cell(r.outer_iterations),
                    _cell(r.wall_time_ms),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def render_json(rows, spec):
    payload = {
        "spec": {
            "setting": spec.setting,
            "d": spec.d,
            "n": spec.n,
            "alphas": list(spec.alphas),
            "trials": spec.trials,
            "methods": list(spec.methods),
            "sigma": spec.sigma,
            "c1_squared": spec.c1_squared,
            "p": spec.p,
            "tau": spec.tau,
            "seed": spec.seed,
        },
        "rows": [
            {
                "method": r.method,
                "alpha": r.alpha,
                "d": r.d,
                "n": r.n,
                "trial": r.trial,
                "recovery_error": r.recovery_error,
                "outer_iterations": r.outer_iterations,
                "wall_time_ms": r.wall_time_ms,
            }
            for r in rows
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_results(rows, spec, path):
    text = render_csv(rows) if spec.fmt == "csv" else render_json(rows, spec)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def ingest_csv(path):
    """Parse a dataset CSV; returns (data, labels-or-None).

    Expects the header x0,...,x{d-1} with an optional trailing is_inlier
    column.  Ragged rows or non-numeric cells raise ValueError naming the
    offending line number (1-based, header included).
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines or not lines[0]:
        raise ValueError(f"{path}: line 1: empty or missing header")
    header = lines[0].split(",")
    labeled = header[-1] == "is_inlier"
    d = len(header) - 1 if labeled else len(header)
    expected = [f"x{j}" for j in range(d)]
    if header[:d] != expected:
        raise ValueError(f"{path}: line 1: expected columns x0..x{d - 1}")
    rows = []
    labels = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        cells = line.split(",")
        if len(cells) != len(header):
            raise ValueError(
                f"{path}: line {lineno}: expected {len(header)} cells, "
                f"got {len(cells)}"
            )
        try:
            rows.append([float(c) for c in cells[:d]])
            if labeled:
                labels.append(bool(int(cells[d])))
        except ValueError:
            raise ValueError(
                f"{path}: line {lineno}: non-numeric cell"
            ) from None
    data = np.array(rows, dtype=float)
    if data.size == 0:
        raise ValueError(f"{path}: no data rows")
    return data, (np.array(labels, dtype=bool) if labeled else None)


def brute_force_l0(data, bound, tau=DEFAULT_TAU):
    """Exhaustive minimum-cardinality search over binary indicators.

    Enumerates outlier sets by increasing size; for each, centers on the
    complement's mean and checks the scatter budget exactly.  Returns
    (min_l0, support, mean) for the first feasible set in
    (size, lexicographic) order.  tau is accepted for signature symmetry
    with the relaxed solvers; binary indicators do not depend on it.
    """
    data = np.asarray(data, dtype=float)
    n = data.shape[0]
    if n > BRUTE_FORCE_MAX_N:
        raise SizeLimitError(
            f"exhaustive search supports n <= {BRUTE_FORCE_MAX_N}, got {n}"
        )
    rho = bound.rho() if isinstance(bound, MomentBound) else float(bound)
    for k in range(n):
        for outliers in itertools.combinations(range(n), k):
            mask = np.ones(n, dtype=bool)
            mask[list(outliers)] = False
            kept = data[mask]
            center = kept.mean(axis=0)
            dev = kept - center
            scatter = dev.T @ dev
            lam = float(np.linalg.eigvalsh(0.5 * (scatter + scatter.T))[-1])
            if lam <= rho:
                return k, frozenset(outliers), center
    raise RuntimeError("no feasible indicator found")  # unreachable: k=n-1 has zero scatter


def calibrate_sigma(clean_subset):
    """Deviation scale from a known-clean subset: sqrt of the top
    eigenvalue of its sample covariance.

    This is a convenience heuristic for setting the budget input when no
    scale is known a priori — not part of the estimator's guarantees.
    Subsets smaller than d/4 rows trigger a warning; degenerate
    (all-identical) subsets return 0.0 with a warning.
    """
    data = np.asarray(clean_subset, dtype=float)
    if data.ndim != 2 or data.shape[0] < 1:
        raise ValueError("clean_subset must be a nonempty (n, d) array")
    m, d = data.shape
    if m < d / 4:
        warnings.warn(
            f"calibration subset has {m} rows for dimension {d}; "
            "scale estimate may be unreliable",
            RuntimeWarning,
        )
    if m == 1 or np.all(data == data[0]):
        warnings.warn(
            "calibration subset is degenerate (all rows identical)",
            RuntimeWarning,
        )
        return 0.0
    dev = data - data.mean(axis=0)
    cov = dev.T @ dev / (m - 1)
    lam = float(np.linalg.eigvalsh(0.5 * (cov + cov.T))[-1])
    return float(np.sqrt(max(lam, 0.0)))


def parse_config(path):
    """Flat key=value config mirroring the CLI flags.

    Blank lines and lines starting with '#' are ignored.  Values stay
    strings; repeated keys and comma-separated values both accumulate for
    list-valued flags (alpha, methods).  Unknown keys raise ValueError.
    """
    known = {
        "setting", "d", "n", "alpha", "trials", "methods", "sigma",
        "c1sq", "p", "tau", "seed", "out", "format",
    }
    listy = {"alpha", "methods"}
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(
                    f"{path}: line {lineno}: expected key=value"
                )
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key not in known:
                raise ValueError(f"{path}: line {lineno}: unknown key {key!r}")
            if key in listy:
                out.setdefault(key, [])
                out[key].extend(
                    v.strip() for v in value.split(",") if v.strip()
                )
            else:
                out[key] = value
    return out
