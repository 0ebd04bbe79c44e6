"""Shared problem data: the spectral budget and the outlier indicator."""

from dataclasses import dataclass, field

import numpy as np

MIN_C1_SQUARED = 1.5
DEFAULT_TAU = 0.5


@dataclass(frozen=True)
class MomentBound:
    """Right-hand side of the scatter constraint, kept in factored form.

    The estimator constrains the largest eigenvalue of the inlier scatter
    by rho() = c1_squared * n * sigma**2.  sigma is the caller's bound on
    the per-direction deviation scale; c1_squared >= 1.5 is required for
    the recovery guarantee to apply.
    """

    sigma: float
    n: int
    c1_squared: float = MIN_C1_SQUARED

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.c1_squared < MIN_C1_SQUARED:
            raise ValueError(f"c1_squared must be >= {MIN_C1_SQUARED}")

    def rho(self):
        return self.c1_squared * self.n * self.sigma**2


def support_of(h, tau):
    """Indices with h[i] strictly above tau; ties at tau count as inliers."""
    h = np.asarray(h, dtype=float)
    if not 0.0 <= tau < 1.0:
        raise ValueError("tau must lie in [0, 1)")
    return frozenset(int(i) for i in np.nonzero(h > tau)[0])


@dataclass(frozen=True)
class OutlierIndicator:
    """Fractional outlier indicator plus its thresholded support set."""

    h: np.ndarray
    tau: float
    support: frozenset = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "h", np.asarray(self.h, dtype=float))
        if self.support is None:
            object.__setattr__(self, "support", support_of(self.h, self.tau))

    @property
    def l0(self):
        """Number of suspected outliers after thresholding."""
        return len(self.support)

    def inlier_mask(self):
        mask = np.ones(self.h.shape[0], dtype=bool)
        mask[list(self.support)] = False
        return mask
