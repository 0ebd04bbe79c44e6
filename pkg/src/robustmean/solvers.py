"""Subproblem solvers for the indicator-update step.

Every variant here optimizes over the box 0 <= w <= caps subject to one
spectral budget: lambda_max of a w-weighted sum of PSD rank-one factors
must stay below a cap rho.  The constraint is handled by outer
approximation: for any unit direction v, feasibility implies the linear
cut sum_i w_i * s_i * (a_i . v)^2 <= rho, so the loop alternates between
harvesting violated directions from the current iterate's top eigenspace
and re-solving the small LP/QP over the accumulated cuts.

The maximization path uses two phases per round to make the answer
unique: an LP computes the best objective value over the current cuts,
then a minimum-norm QP selects the smallest-norm point of that optimal
face.  Uniqueness buys bitwise reproducibility and permutation
equivariance, and on ties it spreads weight evenly across interchangeable
samples rather than committing to an arbitrary vertex.

The box QPs are solved through their duals: the box constraint projects
in closed form, leaving a smooth bound-constrained concave dual handled
by L-BFGS-B with warm starts across rounds.  Cut rows are normalized to
unit length so the dual stays well scaled regardless of target scales.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog, minimize

from .problem import DEFAULT_TAU, MomentBound, OutlierIndicator

DEFAULT_OPT_TOL = 1e-3
DEFAULT_FEAS_TOL = 1e-3
DEFAULT_MAX_ROUNDS = 120
DEFAULT_INNER_ITERATIONS = 5000

# cut harvesting: keep eigendirections whose eigenvalue exceeds this
# fraction of the budget, at most this many per round
_HARVEST_FRACTION = 0.95
_HARVEST_LIMIT = 8
_DEDUP_COSINE = 1.0 - 1e-10

# adaptive stop for the cut loop: give up once the best feasible value has
# improved by less than this fraction over a full window of rounds
_STALL_WINDOW = 8
_STALL_FRACTION = 3e-3


@dataclass(frozen=True)
class SolverTolerances:
    """Termination knobs shared by the solver entry points.

    opt_tol and feas_tol are relative; max_rounds caps the cut-generation
    loop and inner_iterations caps each dual QP solve.  Budget exhaustion
    is reported through SolverReport.converged rather than raised.
    """

    opt_tol: float = DEFAULT_OPT_TOL
    feas_tol: float = DEFAULT_FEAS_TOL
    max_rounds: int = DEFAULT_MAX_ROUNDS
    inner_iterations: int = DEFAULT_INNER_ITERATIONS


@dataclass(frozen=True)
class SolverReport:
    """Outcome summary for one solver call."""

    objective: float
    feasibility_gap: float
    iterations: int
    converged: bool


@dataclass(frozen=True)
class IrlsReport(SolverReport):
    """solve_lp report; surrogate_trace holds the smoothed penalty value
    after the convex initialization and after each accepted reweight
    round, so the nonincrease guarantee is directly observable."""

    surrogate_trace: tuple = ()


@dataclass(frozen=True)
class PackingInstance:
    """max u.w over 0 <= w <= box_caps with a spectral budget.

    Factor i is the rank-one PSD matrix scales[i] * outer(directions[i]);
    the constraint is lambda_max(sum_i w_i * factor_i) <= spectral_cap.
    Zero direction rows are allowed (they never load the budget).
    """

    u: np.ndarray
    scales: np.ndarray
    directions: np.ndarray
    box_caps: np.ndarray
    spectral_cap: float

    def __post_init__(self):
        object.__setattr__(self, "u", np.asarray(self.u, dtype=float))
        object.__setattr__(self, "scales", np.asarray(self.scales, dtype=float))
        object.__setattr__(
            self, "directions", np.asarray(self.directions, dtype=float)
        )
        object.__setattr__(
            self, "box_caps", np.asarray(self.box_caps, dtype=float)
        )
        n = self.u.shape[0]
        if self.directions.ndim != 2 or self.directions.shape[0] != n:
            raise ValueError("directions must be an (n, d) array")
        if self.scales.shape != (n,) or self.box_caps.shape != (n,):
            raise ValueError("u, scales, box_caps must share length n")
        if not np.all(self.u > 0):
            raise ValueError("objective weights u must be strictly positive")
        if not np.all(self.scales > 0):
            raise ValueError("factor scales must be strictly positive")
        if not np.all(self.box_caps > 0):
            raise ValueError("box_caps must be strictly positive")
        if not self.spectral_cap > 0:
            raise ValueError("spectral_cap must be positive")


@dataclass(frozen=True)
class IrlsConfig:
    """Reweighting schedule for the concave-penalty path.

    p in (0, 1) is the penalty exponent; delta is the smoothing floor that
    keeps weights finite at h = 0.  outer_reweights = 0 degenerates to the
    plain convex relaxation (no reweighting), which is occasionally handy
    in tests; the default of 3 follows the observation that a few rounds
    capture most of the sharpening.
    """

    p: float = 0.5
    outer_reweights: int = 3
    delta: float = 1e-6
    inner_tol: float = DEFAULT_OPT_TOL
    variant: str = "reweighted-l2"

    def __post_init__(self):
        if not 0.0 < self.p < 1.0:
            raise ValueError("p must lie in (0, 1)")
        if self.outer_reweights < 0:
            raise ValueError("outer_reweights must be nonnegative")
        if not self.delta > 0:
            raise ValueError("delta must be positive")
        if self.variant not in ("reweighted-l2", "reweighted-l1"):
            raise ValueError(f"unknown variant {self.variant!r}")


# ---------------------------------------------------------------------------
# cut machinery
# ---------------------------------------------------------------------------

class CutPool:
    """Accumulated unit cut directions, deduplicated by cosine similarity.

    Directions remain valid cuts for any weighting and any re-centering of
    the same sample set (the induced linear rows are rebuilt per solve), so
    one pool can be shared across the re-solves of an alternating run.
    """

    def __init__(self):
        self.directions = []

    def add(self, v):
        for old in self.directions:
            if abs(float(v @ old)) > _DEDUP_COSINE:
                return False
        self.directions.append(np.array(v, dtype=float))
        return True

    def __len__(self):
        return len(self.directions)


class _FactorGeometry:
    """Rank-one factor geometry: scatter eigenvalues and cut rows.

    coeff[i] multiplies factor i on top of the solve's variable, i.e. the
    constrained matrix is sum_i w_i * coeff_i * outer(dev_i).  Cut rows
    are cached in append-only order (pool directions materialize at
    construction, new cuts as they are harvested) so dual warm starts
    stay aligned across rounds.

    Besides top-eigenvector cuts, each harvest emits one aggregate cut
    from the softmax density over the current spectrum: for any unit-trace
    PSD matrix Z, every feasible w satisfies trace(Z * M(w)) <= budget,
    and the softmax choice concentrates Z on the whole near-top eigenspace
    at once, which matters when the spectrum has a dense edge that
    single-direction cuts shave only one ulp at a time.  Aggregate rows
    are specific to this geometry's deviations, so they live in the local
    cache, not the shared pool.
    """

    def __init__(self, deviations, coeff, pool=None):
        self.dev = np.ascontiguousarray(deviations, dtype=float)
        self.coeff = np.asarray(coeff, dtype=float)
        self.pool = pool if pool is not None else CutPool()
        self._cache = [self._dir_row(v) for v in self.pool.directions]

    def _dir_row(self, v):
        proj = self.dev @ v
        return proj * proj * self.coeff

    def lam(self, w):
        m = (self.dev * (w * self.coeff)[:, None]).T @ self.dev
        m = 0.5 * (m + m.T)
        self._evals, self._evecs = np.linalg.eigh(m)
        return float(self._evals[-1])

    def harvest(self, budget):
        """Cache an aggregate cut plus the top eigendirection cuts."""
        evals, evecs = self._evals, self._evecs
        lam = evals[-1]

        slack = max((lam - budget) / 2.0, 1e-4 * budget)
        theta = np.log(max(evals.shape[0], 2)) / slack
        density = np.exp(theta * (evals - lam))
        density /= density.sum()
        proj2 = (self.dev @ evecs) ** 2
        self._cache.append((proj2 @ density) * self.coeff)

        added = 1
        thresh = _HARVEST_FRACTION * budget
        for j in range(evals.shape[0] - 1, -1, -1):
            if evals[j] <= thresh or added > _HARVEST_LIMIT:
                break
            if self.pool.add(evecs[:, j]):
                self._cache.append(proj2[:, j] * self.coeff)
                added += 1
        return added

    def rows(self):
        return np.array(self._cache)


class _DiagonalGeometry:
    """Diagonal-factor geometry for verification instances.

    Factor i is diag(diags[i]); the budget matrix is then diagonal, its
    top eigenvalue is a per-axis maximum and the exact cuts are the axis
    inequalities themselves (at most d of them).
    """

    def __init__(self, diags):
        self.diags = np.asarray(diags, dtype=float)
        self.axes = []

    def lam(self, w):
        self._axis_vals = w @ self.diags
        return float(np.max(self._axis_vals))

    def harvest(self, budget):
        added = 0
        thresh = _HARVEST_FRACTION * budget
        order = np.argsort(self._axis_vals)[::-1]
        for j in order:
            if self._axis_vals[j] <= thresh or added >= _HARVEST_LIMIT:
                break
            if int(j) not in self.axes:
                self.axes.append(int(j))
                added += 1
        return added

    def rows(self):
        return self.diags[:, self.axes].T


def _box_qp(target, caps, rows, rhs, warm=None, maxiter=DEFAULT_INNER_ITERATIONS):
    """min 0.5*||z - target||^2 s.t. 0 <= z <= caps, rows @ z <= rhs.

    Solved through the dual: z(lam) = clip(target - rows^T lam, 0, caps)
    eliminates the box exactly, and the remaining concave dual over
    lam >= 0 is maximized with L-BFGS-B.  Callers pass rows normalized to
    unit length so a single absolute gradient tolerance is meaningful.
    """
    k = rows.shape[0]

    def negated_dual(lam):
        z = np.clip(target - rows.T @ lam, 0.0, caps)
        slack = rows @ z - rhs
        diff = z - target
        value = 0.5 * float(diff @ diff) + float(lam @ slack)
        return -value, -slack

    start = np.zeros(k) if warm is None else warm
    gtol = 1e-8 * max(1.0, float(np.max(np.abs(rhs))))
    res = minimize(
        negated_dual,
        start,
        jac=True,
        method="L-BFGS-B",
        bounds=[(0.0, None)] * k,
        options={"maxiter": maxiter, "ftol": 1e-18, "gtol": gtol},
    )
    lam = np.maximum(res.x, 0.0)
    z = np.clip(target - rows.T @ lam, 0.0, caps)
    return z, lam


def _pad_warm(warm, k):
    if warm is None or warm.shape[0] > k:
        return None
    if warm.shape[0] == k:
        return warm
    return np.concatenate([warm, np.zeros(k - warm.shape[0])])


def _normalized(rows, cap):
    norms = np.linalg.norm(rows, axis=1)
    norms = np.where(norms > 0, norms, 1.0)
    return rows / norms[:, None], cap / norms


def _maximize_with_cuts(u, caps, cap, geom, tols):
    """Shared cut loop for the packing maximizers.  Returns (w, report).

    Each round evaluates the true constraint at the current iterate,
    harvests cuts, and re-solves the cut LP plus the minimum-norm
    tie-break QP.  Scaling any iterate by cap/lambda makes it exactly
    feasible, so the loop keeps the best feasible iterate seen and the cut
    LP value as an optimistic bound; it stops as converged when either
    the iterate itself satisfies the budget within feas_tol or the best
    feasible iterate is within opt_tol of the bound, and it stops
    unconverged (returning that best feasible iterate) when a full window
    of rounds fails to improve it — spectra with a dense edge otherwise
    make the polyhedral model grind out vanishing improvements forever.
    """
    n = u.shape[0]
    w = caps.copy()
    warm = None
    best_value, best_w, best_gap = -np.inf, None, 0.0
    bound_value = None
    history = []
    rounds = 0
    for rounds in range(tols.max_rounds):
        lam = geom.lam(w)
        if lam <= cap * (1.0 + 0.5 * tols.feas_tol):
            value = float(u @ w)
            if bound_value is None or value >= (1.0 - tols.opt_tol) * bound_value:
                return w, SolverReport(
                    objective=value,
                    feasibility_gap=max(0.0, lam - cap) / cap,
                    iterations=rounds,
                    converged=True,
                )
            # feasible but short of the value certificate: keep it as the
            # incumbent and let further cuts close the gap
            if value > best_value:
                best_value, best_w = value, w.copy()
                best_gap = max(0.0, lam - cap) / cap
        else:
            scaled = w * (cap / lam)
            value = float(u @ scaled)
            if value > best_value:
                best_value, best_w, best_gap = value, scaled, 0.0
        history.append(best_value)
        if bound_value is not None and best_value >= (1.0 - tols.opt_tol) * bound_value:
            return best_w, SolverReport(
                objective=best_value,
                feasibility_gap=best_gap,
                iterations=rounds,
                converged=True,
            )
        if (
            len(history) > _STALL_WINDOW
            and history[-1] - history[-1 - _STALL_WINDOW]
            < _STALL_FRACTION * abs(history[-1])
        ):
            return best_w, SolverReport(
                objective=best_value,
                feasibility_gap=best_gap,
                iterations=rounds,
                converged=False,
            )
        geom.harvest(cap)
        rows, rhs = _normalized(geom.rows(), cap)

        lp = linprog(
            -u,
            A_ub=rows,
            b_ub=rhs,
            bounds=list(zip(np.zeros(n), caps)),
            method="highs",
        )
        if not lp.success:
            raise RuntimeError(f"cut-relaxation LP failed: {lp.message}")
        bound_value = -lp.fun

        # minimum-norm point of the (near-)optimal face of the cut LP
        u_norm = float(np.linalg.norm(u))
        floor = (1.0 - 0.3 * tols.opt_tol) * bound_value
        qp_rows = np.vstack([-u[None, :] / u_norm, rows])
        qp_rhs = np.concatenate([[-floor / u_norm], rhs])
        warm = _pad_warm(warm, qp_rows.shape[0])
        w, warm = _box_qp(
            np.zeros(n), caps, qp_rows, qp_rhs,
            warm=warm, maxiter=tols.inner_iterations,
        )
        # The dual QP can land slightly below the value floor on sliver
        # polytopes; blending toward the LP vertex restores the floor
        # while staying inside the cut polytope.
        short = floor - float(u @ w)
        if short > 0.0:
            lp_x = np.asarray(lp.x, dtype=float)
            denom = float(u @ lp_x) - float(u @ w)
            if denom > 0.0:
                w = w + min(1.0, short / denom) * (lp_x - w)

    lam = geom.lam(w)
    if lam <= cap * (1.0 + 0.5 * tols.feas_tol):
        value = float(u @ w)
        if value > best_value or best_w is None:
            best_value, best_w = value, w
            best_gap = max(0.0, lam - cap) / cap
    else:
        scaled = w * (cap / lam)
        value = float(u @ scaled)
        if value > best_value or best_w is None:
            best_value, best_w, best_gap = value, scaled, 0.0
    converged = (
        bound_value is not None
        and best_value >= (1.0 - tols.opt_tol) * bound_value
    )
    return best_w, SolverReport(
        objective=best_value,
        feasibility_gap=best_gap,
        iterations=tols.max_rounds,
        converged=converged,
    )


# ---------------------------------------------------------------------------
# public solvers
# ---------------------------------------------------------------------------

def packing_sdp_maximize(
    inst,
    opt_tol=DEFAULT_OPT_TOL,
    feas_tol=DEFAULT_FEAS_TOL,
    *,
    max_rounds=DEFAULT_MAX_ROUNDS,
    inner_iterations=DEFAULT_INNER_ITERATIONS,
    cut_pool=None,
):
    """Maximize u.w subject to the box and the rank-one spectral budget.

    Returns (w, report).  The result is deterministic for identical
    inputs; on budget exhaustion the final iterate is scaled back to exact
    feasibility and reported with converged=False.
    """
    tols = SolverTolerances(opt_tol, feas_tol, max_rounds, inner_iterations)
    geom = _FactorGeometry(inst.directions, inst.scales, pool=cut_pool)
    return _maximize_with_cuts(
        inst.u, inst.box_caps.copy(), inst.spectral_cap, geom, tols
    )


def packing_maximize_diagonal(
    u, diags, box_caps, spectral_cap,
    opt_tol=DEFAULT_OPT_TOL,
    feas_tol=DEFAULT_FEAS_TOL,
):
    """Diagonal-factor packing variant: factor i is diag(diags[i]).

    Used for small verification instances where factors are diagonal but
    not rank one; the budget matrix is then diagonal and the cut loop
    terminates after at most d exact axis cuts.
    """
    u = np.asarray(u, dtype=float)
    diags = np.asarray(diags, dtype=float)
    box_caps = np.asarray(box_caps, dtype=float)
    if np.any(diags < 0):
        raise ValueError("diagonal factors must be entrywise nonnegative")
    if not spectral_cap > 0:
        raise ValueError("spectral_cap must be positive")
    tols = SolverTolerances(opt_tol, feas_tol)
    geom = _DiagonalGeometry(diags)
    return _maximize_with_cuts(u, box_caps.copy(), spectral_cap, geom, tols)


def solve_l1(data, center, bound, tols=None, *, cut_pool=None):
    """Convex relaxation of the sparse indicator objective.

    Minimizes sum h_i over 0 <= h <= 1 subject to the scatter budget at
    the given center, via the substitution w = 1 - h which turns it into
    a packing maximization.  Returns (OutlierIndicator, SolverReport).
    """
    data = np.asarray(data, dtype=float)
    n = data.shape[0]
    return solve_weighted_l1(
        data, center, bound, np.ones(n), tols, cut_pool=cut_pool
    )


def solve_weighted_l1(data, center, bound, u, tols=None, *, cut_pool=None):
    """Weighted variant: minimizes sum u_i * h_i under the same budget."""
    data = np.asarray(data, dtype=float)
    center = np.asarray(center, dtype=float)
    u = np.asarray(u, dtype=float)
    if data.ndim != 2:
        raise ValueError("data must be 2-D")
    n = data.shape[0]
    if u.shape != (n,):
        raise ValueError("u must have one entry per sample")
    if np.any(u <= 0):
        raise ValueError("objective weights must be strictly positive")
    tols = tols or SolverTolerances()
    rho = bound.rho() if isinstance(bound, MomentBound) else float(bound)
    if not rho > 0:
        raise ValueError("spectral budget must be positive")
    geom = _FactorGeometry(data - center, np.ones(n), pool=cut_pool)
    w, report = _maximize_with_cuts(u, np.ones(n), rho, geom, tols)
    h = np.clip(1.0 - w, 0.0, 1.0)
    return OutlierIndicator(h=h, tau=DEFAULT_TAU), report


def irls_weights(h_prev, p, delta, variant="reweighted-l2"):
    """Per-sample weights for the next majorize-minimize round.

    reweighted-l2 returns u with u_i^2 = (h_i^2 + delta)^(p/2 - 1); the
    weighted least-squares subproblem built from it majorizes the smoothed
    concave penalty.  reweighted-l1 returns u_i = p * (h_i + delta)^(p-1),
    the tangent slopes of the penalty.  delta > 0 keeps both finite at 0.
    """
    h = np.clip(np.asarray(h_prev, dtype=float), 0.0, 1.0)
    if variant == "reweighted-l2":
        return np.power(h * h + delta, (p - 2.0) / 4.0)
    if variant == "reweighted-l1":
        return p * np.power(h + delta, p - 1.0)
    raise ValueError(f"unknown variant {variant!r}")


def sdp_constrained_least_squares(
    data, center, targets, spectral_cap, tols=None, *, scales=None, cut_pool=None
):
    """min ||targets - z||^2 s.t. 0 <= z <= targets and a spectral budget.

    The budget constrains lambda_max(sum_i z_i * scales_i / targets_i *
    outer(dev_i)) <= spectral_cap.  Strictly convex, so the optimum is
    unique; the same cut loop as the packing path applies, minus the LP
    tie-break phase.  Returns (z, SolverReport) with objective equal to
    the attained squared distance.
    """
    data = np.asarray(data, dtype=float)
    center = np.asarray(center, dtype=float)
    targets = np.asarray(targets, dtype=float)
    if np.any(targets <= 0):
        raise ValueError("targets must be strictly positive")
    if not spectral_cap > 0:
        raise ValueError("spectral_cap must be positive")
    tols = tols or SolverTolerances()
    n = data.shape[0]
    coeff = (np.ones(n) if scales is None else np.asarray(scales, float)) / targets
    geom = _FactorGeometry(data - center, coeff, pool=cut_pool)

    def distance(z):
        diff = targets - z
        return float(diff @ diff)

    z = targets.copy()
    warm = None
    best_value, best_z = np.inf, None
    model_bound = 0.0  # cut-model optimum lower-bounds the true one
    history = []
    rounds = 0
    for rounds in range(tols.max_rounds):
        lam = geom.lam(z)
        if lam <= spectral_cap * (1.0 + 0.5 * tols.feas_tol):
            return z, SolverReport(
                objective=distance(z),
                feasibility_gap=max(0.0, lam - spectral_cap) / spectral_cap,
                iterations=rounds,
                converged=True,
            )
        scaled = z * (spectral_cap / lam)
        value = distance(scaled)
        if value < best_value:
            best_value, best_z = value, scaled
        history.append(best_value)
        slack = max(model_bound, tols.opt_tol)
        if best_value <= model_bound + tols.opt_tol * slack:
            return best_z, SolverReport(
                objective=best_value,
                feasibility_gap=0.0,
                iterations=rounds,
                converged=True,
            )
        if (
            len(history) > _STALL_WINDOW
            and history[-1 - _STALL_WINDOW] - history[-1]
            < _STALL_FRACTION * abs(history[-1])
        ):
            return best_z, SolverReport(
                objective=best_value,
                feasibility_gap=0.0,
                iterations=rounds,
                converged=False,
            )
        geom.harvest(spectral_cap)
        rows, rhs = _normalized(geom.rows(), spectral_cap)
        warm = _pad_warm(warm, rows.shape[0])
        z, warm = _box_qp(
            targets, targets, rows, rhs,
            warm=warm, maxiter=tols.inner_iterations,
        )
        model_bound = distance(z)

    lam = geom.lam(z)
    if lam <= spectral_cap * (1.0 + 0.5 * tols.feas_tol):
        return z, SolverReport(
            objective=distance(z),
            feasibility_gap=max(0.0, lam - spectral_cap) / spectral_cap,
            iterations=tols.max_rounds,
            converged=True,
        )
    scaled = z * (spectral_cap / lam)
    value = distance(scaled)
    if value < best_value or best_z is None:
        best_value, best_z = value, scaled
    return best_z, SolverReport(
        objective=best_value,
        feasibility_gap=0.0,
        iterations=tols.max_rounds,
        converged=False,
    )


def _surrogate(h, cfg):
    if cfg.variant == "reweighted-l2":
        return float(np.sum(np.power(h * h + cfg.delta, cfg.p / 2.0)))
    return float(np.sum(np.power(h + cfg.delta, cfg.p)))


def solve_lp(data, center, bound, cfg=None, tols=None, *, cut_pool=None):
    """Concave-penalty sharpening of the convex relaxation.

    Starts from the solve_l1 solution, then runs cfg.outer_reweights
    majorize-minimize rounds: recompute irls_weights from the current h
    and solve the induced weighted subproblem (a constrained least squares
    for reweighted-l2, a weighted packing for reweighted-l1).  A round
    that fails to keep the smoothed surrogate from increasing (beyond
    floating-point dust) is rejected and stops the schedule, so the
    surrogate trace is nonincreasing by construction.
    """
    cfg = cfg or IrlsConfig()
    tols = tols or SolverTolerances(opt_tol=cfg.inner_tol)
    data = np.asarray(data, dtype=float)
    center = np.asarray(center, dtype=float)
    rho = bound.rho() if isinstance(bound, MomentBound) else float(bound)
    pool = cut_pool if cut_pool is not None else CutPool()

    indicator, report = solve_l1(data, center, bound, tols, cut_pool=pool)
    h = indicator.h
    value = _surrogate(h, cfg)
    gap = report.feasibility_gap
    converged = report.converged
    rounds_done = 0
    trace = [value]
    for _ in range(cfg.outer_reweights):
        u = irls_weights(h, cfg.p, cfg.delta, cfg.variant)
        if cfg.variant == "reweighted-l2":
            z, sub = sdp_constrained_least_squares(
                data, center, u, rho, tols, cut_pool=pool
            )
            h_new = np.clip(1.0 - z / u, 0.0, 1.0)
        else:
            ind_new, sub = solve_weighted_l1(
                data, center, bound, u, tols, cut_pool=pool
            )
            h_new = ind_new.h
        value_new = _surrogate(h_new, cfg)
        if value_new > value * (1.0 + 1e-8):
            break  # numerically stalled; keep the previous iterate
        h, value = h_new, value_new
        gap, converged = sub.feasibility_gap, converged and sub.converged
        rounds_done += 1
        trace.append(value)

    final = OutlierIndicator(h=h, tau=DEFAULT_TAU)
    return final, IrlsReport(
        objective=value,
        feasibility_gap=gap,
        iterations=rounds_done,
        converged=converged,
        surrogate_trace=tuple(trace),
    )
