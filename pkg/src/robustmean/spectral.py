"""Dense symmetric-matrix primitives.

Weighted scatter matrices, a deterministic power iteration for the top
eigenpair, and an exhaustive resilience checker used by the test suite.
Matrices are plain float ndarrays; "symmetric" means exactly equal to the
transpose (construction sites symmetrize explicitly, so bitwise equality
is the contract, not a tolerance).
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, SizeLimitError

DEFAULT_EIG_TOL = 1e-8


@dataclass(frozen=True)
class EigPair:
    """Largest eigenvalue with a unit eigenvector and the achieved residual."""

    value: float
    vector: np.ndarray
    residual: float


def weighted_scatter(data, center, weights):
    """Sum of weights[i] * outer(data[i] - center) as an exactly symmetric matrix.

    The public callers pass weights in [0, 1]; only shapes are validated so
    the solvers can reuse this with arbitrary nonnegative scalings.
    """
    data = np.asarray(data, dtype=float)
    center = np.asarray(center, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if data.ndim != 2:
        raise ValueError(f"data must be 2-D, got shape {data.shape}")
    n, d = data.shape
    if center.shape != (d,):
        raise ValueError(f"center has shape {center.shape}, expected ({d},)")
    if weights.shape != (n,):
        raise ValueError(f"weights has shape {weights.shape}, expected ({n},)")
    dev = data - center
    m = (dev * weights[:, None]).T @ dev
    return 0.5 * (m + m.T)


def lambda_max(mat, tol=DEFAULT_EIG_TOL, max_iter=None):
    """Top eigenpair of a symmetric matrix by shifted power iteration.

    The start vector is fixed (normalized all-ones with +1e-6 on coordinate
    0 to break ties), so results are reproducible run to run.  A Gershgorin
    lower-bound shift makes the algebraically largest eigenvalue dominate
    in magnitude even for indefinite input.  Convergence is declared when
    ||M v - value * v|| <= tol * max(1, |value|); failing that within
    max_iter raises ConvergenceError carrying the last residual.
    """
    mat = np.asarray(mat, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"matrix must be square, got shape {mat.shape}")
    if not np.array_equal(mat, mat.T):
        raise ValueError("matrix must be exactly symmetric")
    if not tol > 0:
        raise ValueError("tol must be positive")
    d = mat.shape[0]
    if max_iter is None:
        max_iter = 10 * d + 1000

    # shift so every eigenvalue of (mat + shift*I) is nonnegative
    diag = np.diag(mat)
    row_rest = np.sum(np.abs(mat), axis=1) - np.abs(diag)
    gersh_low = np.min(diag - row_rest) if d else 0.0
    shift = max(0.0, -float(gersh_low))

    v = np.ones(d)
    v[0] += 1e-6
    v /= np.linalg.norm(v)
    residual = np.inf
    for _ in range(max_iter):
        shifted = mat @ v + shift * v
        norm = np.linalg.norm(shifted)
        if norm == 0.0:
            # v is an exact null vector of the shifted matrix; (-shift, v) is
            # then an exact eigenpair (the zero matrix is the practical case)
            return EigPair(value=-shift, vector=_fix_sign(v), residual=0.0)
        v_next = shifted / norm
        value = float(v_next @ mat @ v_next)
        residual = float(np.linalg.norm(mat @ v_next - value * v_next))
        v = v_next
        if residual <= tol * max(1.0, abs(value)):
            return EigPair(value=value, vector=_fix_sign(v), residual=residual)
    raise ConvergenceError(
        f"power iteration did not reach tol={tol} in {max_iter} iterations"
        f" (last residual {residual:.3e})",
        residual=residual,
    )


def _fix_sign(v):
    """Deterministic eigenvector orientation: largest-|entry| coordinate positive."""
    pivot = int(np.argmax(np.abs(v)))
    return -v if v[pivot] < 0 else v.copy()


def resilience_check(points, center, sigma_bound, beta):
    """True iff every subset of size >= (1-beta)*m has mean within 2*sigma*sqrt(beta).

    Exhaustive over subsets, so restricted to m <= 20 points.  Test-only.
    """
    points = np.asarray(points, dtype=float)
    center = np.asarray(center, dtype=float)
    if points.ndim != 2:
        raise ValueError("points must be 2-D")
    m = points.shape[0]
    if m > 20:
        raise SizeLimitError(f"resilience_check enumerates subsets; m={m} > 20")
    if not 0.0 < beta < 0.5:
        raise ValueError("beta must lie in (0, 0.5)")
    if points.shape[1] != center.shape[0]:
        raise ValueError("points/center dimension mismatch")
    min_size = int(np.ceil((1.0 - beta) * m - 1e-9))
    bound = 2.0 * sigma_bound * np.sqrt(beta)
    for size in range(max(min_size, 1), m + 1):
        combos = np.array(
            list(itertools.combinations(range(m), size)), dtype=int
        )
        means = points[combos].sum(axis=1) / size
        devs = np.linalg.norm(means - center[None, :], axis=1)
        if np.any(devs > bound):
            return False
    return True
