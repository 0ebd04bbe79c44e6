"""Shared exception types."""


class ConvergenceError(RuntimeError):
    """An iterative routine failed to reach its tolerance within its budget.

    Carries the last observed residual so callers can decide whether the
    partial answer is usable.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SizeLimitError(ValueError):
    """An exhaustive routine was asked to enumerate more than it safely can."""


class TraceInvariantError(RuntimeError):
    """The suspected-outlier count failed to strictly decrease.

    This invariant underwrites the termination guarantee of the
    alternating estimator, so a violation is never downgraded to a
    recoverable per-trial failure.
    """
