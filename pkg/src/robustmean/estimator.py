"""Alternating robust mean estimator.

The estimator alternates two steps until the suspected-outlier count
stops improving: (1) holding the center fixed, solve the relaxed
indicator problem for h; (2) holding the thresholded indicator fixed,
recenter on the mean of the samples it keeps.  The count |{h > tau}| is
a nonnegative integer, so insisting on strict decrease forces
termination; the first iteration always counts as a decrease because the
count starts above n.
"""

from dataclasses import dataclass

import numpy as np

from .problem import DEFAULT_TAU, MomentBound, OutlierIndicator, support_of
from .solvers import CutPool, IrlsConfig, solve_l1, solve_lp

MAX_OUTER_CAP = 50


@dataclass(frozen=True)
class EstimateResult:
    """Final center plus the diagnostics of the alternating run.

    l0_trace records the suspected-outlier count after each accepted
    indicator solve (strictly decreasing by construction).  termination
    is one of "l0-non-decreasing", "degenerate-empty-inliers", or
    "iteration-cap".  rounded_feasibility_gap is the relative amount by
    which the thresholded (0/1) indicator overshoots the spectral budget
    at the final center — fractional feasibility does not automatically
    survive rounding, so it is re-checked rather than assumed; 0.0 means
    the rounded solution is exactly feasible.
    """

    mean: np.ndarray
    indicator: OutlierIndicator
    l0_trace: tuple
    outer_iterations: int
    termination: str
    solver_report: object
    rounded_feasibility_gap: float


def threshold_support(h, tau=DEFAULT_TAU):
    """Outlier index set obtained by thresholding h at tau."""
    return support_of(h, tau)


def update_mean(data, inliers):
    """Exact arithmetic mean of the selected rows."""
    data = np.asarray(data, dtype=float)
    idx = sorted(int(i) for i in inliers)
    if not idx:
        raise ValueError("inlier set is empty")
    if idx[0] < 0 or idx[-1] >= data.shape[0]:
        raise ValueError("inlier index out of range")
    return data[idx].mean(axis=0)


def _rounded_gap(data, center, support, rho):
    """Relative budget overshoot of the 0/1-rounded indicator."""
    mask = np.ones(data.shape[0], dtype=bool)
    mask[list(support)] = False
    dev = data[mask] - center
    if dev.shape[0] == 0:
        return 0.0
    scatter = dev.T @ dev
    lam = float(np.linalg.eigvalsh(0.5 * (scatter + scatter.T))[-1])
    return max(0.0, lam - rho) / rho


def robust_mean(
    data,
    bound,
    method="l1",
    tau=DEFAULT_TAU,
    tols=None,
    irls_config=None,
    max_outer=None,
):
    """Estimate the mean of adversarially contaminated samples.

    data is (n, d); bound is a MomentBound fixing the spectral budget
    rho = c1_squared * n * sigma**2.  method selects the indicator solver:
    "l1" for the convex relaxation, "lp" for the concave-penalty
    sharpening.  The center starts at the coordinate-wise median, and cut
    directions are shared across the alternating rounds so later
    recenterings start from an already-informative relaxation.  Solver
    exceptions propagate with the partial l0 trace attached as a
    `partial_l0_trace` attribute.
    """
    data = np.asarray(data, dtype=float)
    if data.ndim != 2 or data.shape[0] < 1:
        raise ValueError("data must be a nonempty (n, d) array")
    if not isinstance(bound, MomentBound):
        raise TypeError("bound must be a MomentBound")
    if method not in ("l1", "lp"):
        raise ValueError(f"unknown method {method!r}")
    if not 0.0 <= tau < 1.0:
        raise ValueError("tau must lie in [0, 1)")
    n = data.shape[0]
    cap = min(n, MAX_OUTER_CAP) if max_outer is None else int(max_outer)
    if cap < 1:
        raise ValueError("max_outer must be at least 1")
    cfg = irls_config or IrlsConfig()

    center = np.median(data, axis=0)
    pool = CutPool()
    prev_count = n + 1
    trace = []
    indicator = None
    report = None
    iterations = 0
    termination = "iteration-cap"

    for _ in range(cap):
        try:
            if method == "l1":
                raw, rep = solve_l1(data, center, bound, tols, cut_pool=pool)
            else:
                raw, rep = solve_lp(
                    data, center, bound, cfg, tols, cut_pool=pool
                )
        except Exception as exc:
            exc.partial_l0_trace = tuple(trace)
            raise
        candidate = OutlierIndicator(h=raw.h, tau=tau)
        count = candidate.l0
        if count >= prev_count:
            termination = "l0-non-decreasing"
            break
        trace.append(count)
        indicator, report = candidate, rep
        iterations += 1
        mask = indicator.inlier_mask()
        if not mask.any():
            termination = "degenerate-empty-inliers"
            break
        center = data[mask].mean(axis=0)
        prev_count = count

    gap = _rounded_gap(data, center, indicator.support, bound.rho())
    return EstimateResult(
        mean=center,
        indicator=indicator,
        l0_trace=tuple(trace),
        outer_iterations=iterations,
        termination=termination,
        solver_report=report,
        rounded_feasibility_gap=gap,
    )
