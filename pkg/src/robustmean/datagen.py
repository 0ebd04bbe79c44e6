"""Seeded generation of adversarially corrupted datasets.

A corruption of rate alpha replaces round(alpha*n) samples (round half
up) with adversarial rows; the survivors' exact average is kept as the
oracle center that estimators are scored against.  Two synthetic
adversaries are provided — a heavy-half-space corruption (setting A) and
a symmetric two-cluster corruption whose rows match the typical inlier
norm (setting B) — plus a generic replacement hook for custom
adversaries.

Corrupted rows occupy the trailing positions of the returned matrix;
the estimators under study are permutation-equivariant, so placement
carries no information.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import rng

_CSV_FMT = "%.17g"


@dataclass(frozen=True)
class CorruptedDataset:
    """Sample matrix plus the oracle bookkeeping for evaluation.

    inlier_mask marks the uncorrupted survivors; oracle_mean is always
    recomputed from the masked rows at construction, so it is exactly
    their arithmetic mean.
    """

    data: np.ndarray
    inlier_mask: np.ndarray
    seed: int
    setting: str
    oracle_mean: np.ndarray = field(default=None)

    def __post_init__(self):
        data = np.asarray(self.data, dtype=float)
        mask = np.asarray(self.inlier_mask, dtype=bool)
        if data.ndim != 2:
            raise ValueError("data must be an (n, d) array")
        if mask.shape != (data.shape[0],):
            raise ValueError("inlier_mask must have one entry per row")
        if not mask.any():
            raise ValueError("at least one inlier is required")
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "inlier_mask", mask)
        object.__setattr__(self, "oracle_mean", data[mask].mean(axis=0))


def round_half_up(x):
    """Nearest integer, with .5 rounding up (2.5 -> 3)."""
    return int(math.floor(x + 0.5))


def corruption_count(alpha, n):
    """Number of replaced rows for corruption rate alpha."""
    return round_half_up(alpha * n)


def _validate_params(d, n, alpha, min_d):
    if d < min_d:
        raise ValueError(f"d must be at least {min_d}")
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 0.0 <= alpha < 0.5:
        raise ValueError("alpha must lie in [0, 0.5)")


def gen_setting_a(d, n, alpha, seed):
    """Half-space corruption: folded-Gaussian and uniformly shifted rows.

    Inliers are standard Gaussian.  Of the k = round(alpha*n) corrupted
    rows, the first ceil(k/2) are entrywise absolute values of standard
    Gaussian draws; the rest are standard Gaussian draws plus independent
    per-entry U(0, 3) shifts.  The shifted block's stream emits its
    Gaussian draws first, then its uniform shifts.
    """
    _validate_params(d, n, alpha, min_d=1)
    k = corruption_count(alpha, n)
    n_in = n - k
    inliers = rng.gaussian_matrix(rng.stream(seed, rng.STREAM_INLIER), n_in, d)
    k1 = (k + 1) // 2
    k2 = k - k1
    folded = np.abs(
        rng.gaussian_matrix(rng.stream(seed, rng.STREAM_OUTLIER_BLOCK_ONE), k1, d)
    )
    gen2 = rng.stream(seed, rng.STREAM_OUTLIER_BLOCK_TWO)
    shifted = rng.gaussian_matrix(gen2, k2, d) + rng.uniform_matrix(
        gen2, k2, d, low=0.0, high=3.0
    )
    data = np.vstack([inliers, folded, shifted])
    mask = np.zeros(n, dtype=bool)
    mask[:n_in] = True
    return CorruptedDataset(data=data, inlier_mask=mask, seed=seed, setting="A")


def gen_setting_b(d, n, alpha, seed):
    """Two-cluster corruption with inlier-scale row norms.

    Inliers are standard Gaussian.  Corrupted rows split evenly (first
    cluster gets the odd one) between the constant vectors
    (sqrt(d/2), sqrt(d/2), 0, ..., 0) and (sqrt(d/2), -sqrt(d/2), 0, ...,
    0); both have Euclidean norm exactly sqrt(d), matching the typical
    inlier norm, which makes the corruption hard to screen by magnitude.
    """
    _validate_params(d, n, alpha, min_d=2)
    k = corruption_count(alpha, n)
    n_in = n - k
    inliers = rng.gaussian_matrix(rng.stream(seed, rng.STREAM_INLIER), n_in, d)
    k1 = (k + 1) // 2
    k2 = k - k1
    c = math.sqrt(d / 2.0)
    cluster1 = np.zeros((k1, d))
    cluster1[:, 0] = c
    cluster1[:, 1] = c
    cluster2 = np.zeros((k2, d))
    cluster2[:, 0] = c
    cluster2[:, 1] = -c
    data = np.vstack([inliers, cluster1, cluster2])
    mask = np.zeros(n, dtype=bool)
    mask[:n_in] = True
    return CorruptedDataset(data=data, inlier_mask=mask, seed=seed, setting="B")


def corrupt(clean, replacements, indices):
    """Replace the given rows of a clean sample with adversarial ones."""
    clean = np.asarray(clean, dtype=float)
    replacements = np.asarray(replacements, dtype=float)
    indices = [int(i) for i in indices]
    n = clean.shape[0]
    if len(set(indices)) != len(indices):
        raise ValueError("indices must be distinct")
    if indices and (min(indices) < 0 or max(indices) >= n):
        raise ValueError("index out of range")
    if replacements.shape[0] != len(indices):
        raise ValueError("one replacement row per index is required")
    if len(indices) > n / 2:
        raise ValueError("cannot corrupt more than half the sample")
    data = clean.copy()
    mask = np.ones(n, dtype=bool)
    if indices:
        data[indices] = replacements
        mask[indices] = False
    return CorruptedDataset(data=data, inlier_mask=mask, seed=0, setting="custom")


def recovery_error(estimate, ds):
    """Euclidean distance from the estimate to the oracle mean."""
    estimate = np.asarray(estimate, dtype=float)
    if estimate.shape != ds.oracle_mean.shape:
        raise ValueError("estimate dimension does not match the dataset")
    return float(np.linalg.norm(estimate - ds.oracle_mean))


def save_csv(ds, path):
    """Write the dataset as CSV: x0,...,x{d-1},is_inlier (1/0 labels).

    Floats are printed with 17 significant digits so values round-trip
    exactly.
    """
    d = ds.data.shape[1]
    header = ",".join([f"x{j}" for j in range(d)] + ["is_inlier"])
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(header + "\n")
        for row, flag in zip(ds.data, ds.inlier_mask):
            cells = [(_CSV_FMT % v) for v in row]
            cells.append("1" if flag else "0")
            fh.write(",".join(cells) + "\n")
