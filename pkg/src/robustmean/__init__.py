"""Robust mean estimation under adversarial contamination.

The central object is an outlier indicator h in [0, 1]^n chosen so that
the scatter of the samples it keeps stays below a spectral budget; the
estimator alternates between solving a relaxation for h and recentering
on the kept samples.  Sparse relaxations (convex and concave-penalty),
reference baselines, adversarial dataset generators, and a reproducible
experiment harness are included.
"""

from .baselines import (
    FilterConfig,
    coordinate_median,
    geometric_median,
    iterative_filter,
    sample_mean,
)
from .datagen import (
    CorruptedDataset,
    corrupt,
    gen_setting_a,
    gen_setting_b,
    recovery_error,
    save_csv,
)
from .errors import ConvergenceError, SizeLimitError, TraceInvariantError
from .estimator import (
    EstimateResult,
    robust_mean,
    threshold_support,
    update_mean,
)
from .harness import (
    ExperimentSpec,
    ResultRow,
    brute_force_l0,
    calibrate_sigma,
    ingest_csv,
    run_experiment,
)
from .problem import (
    DEFAULT_TAU,
    MIN_C1_SQUARED,
    MomentBound,
    OutlierIndicator,
    support_of,
)
from .solvers import (
    CutPool,
    IrlsConfig,
    IrlsReport,
    PackingInstance,
    SolverReport,
    SolverTolerances,
    irls_weights,
    packing_maximize_diagonal,
    packing_sdp_maximize,
    sdp_constrained_least_squares,
    solve_l1,
    solve_lp,
    solve_weighted_l1,
)
from .spectral import EigPair, lambda_max, resilience_check, weighted_scatter

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "CorruptedDataset",
    "CutPool",
    "DEFAULT_TAU",
    "EigPair",
    "EstimateResult",
    "ExperimentSpec",
    "FilterConfig",
    "IrlsConfig",
    "IrlsReport",
    "MIN_C1_SQUARED",
    "MomentBound",
    "OutlierIndicator",
    "PackingInstance",
    "ResultRow",
    "SizeLimitError",
    "SolverReport",
    "SolverTolerances",
    "TraceInvariantError",
    "brute_force_l0",
    "calibrate_sigma",
    "coordinate_median",
    "corrupt",
    "gen_setting_a",
    "gen_setting_b",
    "geometric_median",
    "ingest_csv",
    "irls_weights",
    "iterative_filter",
    "lambda_max",
    "packing_maximize_diagonal",
    "packing_sdp_maximize",
    "recovery_error",
    "resilience_check",
    "robust_mean",
    "run_experiment",
    "sample_mean",
    "save_csv",
    "sdp_constrained_least_squares",
    "solve_l1",
    "solve_lp",
    "solve_weighted_l1",
    "support_of",
    "threshold_support",
    "update_mean",
    "weighted_scatter",
]
