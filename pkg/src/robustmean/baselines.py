"""Reference estimators: sample mean, medians, and spectral filtering.

These serve two roles: initialization (coordinate-wise median seeds the
alternating estimator) and comparison points for the experiment harness.
All are deterministic given the data order and configuration.
"""

import warnings
from dataclasses import dataclass

import numpy as np

_DISTANCE_FLOOR = 1e-12


@dataclass(frozen=True)
class FilterConfig:
    """Stopping and removal schedule for iterative spectral filtering.

    Filtering stops once the top eigenvalue of the survivors' sample
    covariance drops to spectral_threshold * sigma**2; until then each
    round removes the removal_fraction of remaining points with the
    largest squared projection onto the top eigenvector.
    """

    spectral_threshold: float = 2.0
    removal_fraction: float = 0.02
    max_rounds: int = 50

    def __post_init__(self):
        if not self.spectral_threshold >= 1.0:
            raise ValueError("spectral_threshold must be >= 1")
        if not 0.0 < self.removal_fraction < 0.5:
            raise ValueError("removal_fraction must lie in (0, 0.5)")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be at least 1")


def sample_mean(data):
    """Arithmetic mean of all rows."""
    data = np.asarray(data, dtype=float)
    if data.ndim != 2 or data.shape[0] < 1:
        raise ValueError("data must be a nonempty (n, d) array")
    return data.mean(axis=0)


def coordinate_median(data):
    """Per-coordinate median; even counts average the two middle values."""
    data = np.asarray(data, dtype=float)
    if data.ndim != 2 or data.shape[0] < 1:
        raise ValueError("data must be a nonempty (n, d) array")
    return np.median(data, axis=0)


def _weiszfeld_gradient(data, y, dist):
    return ((y[None, :] - data) / dist[:, None]).sum(axis=0)


def geometric_median(data, tol=1e-10, max_iter=1000):
    """Point minimizing the summed Euclidean distances to the rows.

    Weiszfeld iteration with a distance floor to survive iterates landing
    on data points.  When an iterate coincides with a sample, that sample
    is returned exactly if the subgradient condition certifies it as the
    minimizer.  Non-convergence (first-order stationarity still above
    tol after max_iter updates) returns the best iterate with a
    RuntimeWarning.
    """
    data = np.asarray(data, dtype=float)
    if data.ndim != 2 or data.shape[0] < 1:
        raise ValueError("data must be a nonempty (n, d) array")
    if data.shape[0] == 1:
        return data[0].copy()

    y = coordinate_median(data)
    for _ in range(max_iter):
        diff = data - y
        dist = np.linalg.norm(diff, axis=1)
        hits = dist < _DISTANCE_FLOOR
        if hits.any():
            j = int(np.nonzero(hits)[0][0])
            others = ~hits
            if not others.any():
                return data[j].copy()  # all rows identical
            pull = (diff[others] / dist[others, None]).sum(axis=0)
            # a sample point is the minimizer iff the pull of the other
            # points does not exceed its own unit contribution
            if np.linalg.norm(pull) <= 1.0 + 1e-12:
                return data[j].copy()
            dist = np.maximum(dist, _DISTANCE_FLOOR)
        inv = 1.0 / dist
        y_next = (data * inv[:, None]).sum(axis=0) / inv.sum()
        grad = _weiszfeld_gradient(data, y_next, np.maximum(
            np.linalg.norm(data - y_next, axis=1), _DISTANCE_FLOOR))
        y = y_next
        if np.linalg.norm(grad) <= tol:
            return y
    warnings.warn(
        "geometric_median: stationarity tolerance not reached; "
        "returning best iterate",
        RuntimeWarning,
    )
    return y


def iterative_filter(data, sigma, cfg=None):
    """Spectral filtering: repeatedly drop the most aligned points.

    Each round recenters on the survivors' mean, finds the top eigenpair
    of their sample covariance, and removes the removal_fraction of
    remaining points with the largest squared projection, until the top
    eigenvalue falls below spectral_threshold * sigma**2 or the round cap
    is hit.  Returns the survivors' mean.  If removals ever leave fewer
    than two points, the last valid mean is returned with a
    RuntimeWarning.
    """
    data = np.asarray(data, dtype=float)
    if data.ndim != 2 or data.shape[0] < 2:
        raise ValueError("data must contain at least two samples")
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    cfg = cfg or FilterConfig()

    current = data
    last_valid = data.mean(axis=0)
    for _ in range(cfg.max_rounds):
        m = current.shape[0]
        if m < 2:
            warnings.warn(
                "iterative_filter: fewer than two survivors; "
                "returning last valid mean",
                RuntimeWarning,
            )
            return last_valid
        mu = current.mean(axis=0)
        last_valid = mu
        dev = current - mu
        cov = dev.T @ dev / m
        vals, vecs = np.linalg.eigh(0.5 * (cov + cov.T))
        if vals[-1] <= cfg.spectral_threshold * sigma**2:
            return mu
        scores = (dev @ vecs[:, -1]) ** 2
        k = min(int(np.ceil(cfg.removal_fraction * m)), m - 1)
        order = np.argsort(scores, kind="stable")
        keep = np.sort(order[: m - k])  # survivors keep their original order
        current = current[keep]
    return current.mean(axis=0)
