"""Solvers for switching linear regression.

Four methods with different guarantees:

* brute_force_solve: exact, enumerates labelings, exponential in N.
* enumeration_solve: exact on general-position data, polynomial in N for
  fixed d and n. Candidate labelings come from products of linear
  dichotomies of the lifted points (x_i, y_i) and of the x_i themselves,
  one product per mode pair, combined by majority vote. Every labeling a
  pairwise-optimal model set could induce appears among these candidates,
  so fitting each one and keeping the best is globally optimal.
* noiseless_solve: exact for data admitting a zero-error fit; reconstructs
  each mode from d interpolation points.
* altmin_solve: seeded alternating-minimization baseline, local minima and
  all, for contrast.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .core import (
    DEFAULT_TOLERANCES,
    SQUARED,
    Dataset,
    Labeling,
    LossModel,
    ModelSet,
    Tolerances,
    _cost_arrays,
    canonical_label_array,
)
from .geometry import check_general_position, enumerate_linear_dichotomies

__all__ = [
    "CapsExceededError",
    "SolverConfig",
    "SolveReport",
    "RefineResult",
    "solve_mode_regression",
    "fit_modes",
    "refine_alternate",
    "brute_force_solve",
    "CandidateStream",
    "enumerate_candidate_labelings",
    "enumeration_solve",
    "noiseless_solve",
    "altmin_solve",
    "solve_instance",
    "SOLVER_METHODS",
]

_RIDGE = 1e-10
_MAX_REFINE_ROUNDS = 1000

SOLVER_METHODS = ("brute", "enum", "noiseless", "altmin")


class CapsExceededError(RuntimeError):
    """A solver refused to run because a size cap or budget was exceeded."""


@dataclass(frozen=True)
class SolverConfig:
    """Caps, budgets, and tolerances shared by the solvers.

    max_tie_alterations caps how many extra labeling variants a single
    majority-vote tie may spawn; d_max and n_max gate the enumeration
    solver; restarts and seed drive the heuristic. The budgets refuse
    runs whose labeling or combination counts would be excessive, and
    node_budget bounds the noiseless cover search.
    """

    max_tie_alterations: int = 12
    d_max: int = 3
    n_max: int = 3
    restarts: int = 10
    seed: int = 0
    tol: Tolerances = DEFAULT_TOLERANCES
    brute_budget: int = 2_000_000
    candidate_budget: int = 2_000_000
    node_budget: int = 1_000_000
    check_position: bool = True
    threads: int = 1

    def __post_init__(self):
        for name in ("max_tie_alterations", "d_max", "n_max", "restarts",
                     "brute_budget", "candidate_budget", "node_budget",
                     "threads"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class SolveReport:
    """Outcome of a solver run.

    cost always equals the empirical cost of (models, labeling) on the data
    it was computed for; labeling is canonical (modes numbered by first
    occurrence). candidates_examined counts method-specific units: labelings
    for brute force, classifier combinations for enumeration, interpolation
    systems for the noiseless solver, restarts for the heuristic.
    """

    method: str
    cost: float
    models: ModelSet
    labeling: Labeling
    candidates_examined: int
    elapsed: float
    status: str
    warnings: tuple = ()

    def __post_init__(self):
        if self.status not in ("optimal", "heuristic", "infeasible"):
            raise ValueError(f"unknown status {self.status!r}")


@dataclass(frozen=True)
class RefineResult:
    """Refinement outcome; unpacks as (models, labeling), costs carries the
    half-step cost trace."""

    models: ModelSet
    labeling: Labeling
    costs: tuple

    def __iter__(self):
        return iter((self.models, self.labeling))


# ---------------------------------------------------------------------------
# Per-mode regression


def _squared_fit(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Least squares via normal equations; tiny ridge when rank-deficient."""
    k, d = x.shape
    if k == 0:
        return np.zeros(d)
    G = x.T @ x
    b = x.T @ y
    if k >= d:
        try:
            w = np.linalg.solve(G, b)
        except np.linalg.LinAlgError:
            w = None
        if w is not None and np.all(np.isfinite(w)) \
                and np.allclose(G @ w, b, rtol=1e-8, atol=1e-12):
            return w
    return np.linalg.solve(G + _RIDGE * np.eye(d), b)


def _absolute_fit(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Exact least-absolute-deviations fit.

    An optimal L1 linear fit interpolates d of the points, so scoring the
    interpolant of every d-subset is exact. Ties keep the first candidate
    in subset order.
    """
    k, d = x.shape
    if k == 0:
        return np.zeros(d)
    best_total = np.inf
    best_w = None
    for subset in itertools.combinations(range(k), d):
        sub = list(subset)
        w, *_ = np.linalg.lstsq(x[sub], y[sub], rcond=None)
        if not np.all(np.isfinite(w)):
            continue
        total = float(np.abs(y - x @ w).sum())
        if total < best_total:
            best_total = total
            best_w = w
    if k < d or best_w is None:
        w, *_ = np.linalg.lstsq(x, y, rcond=None)
        total = float(np.abs(y - x @ w).sum())
        if total < best_total:
            best_w = w
    return best_w


def solve_mode_regression(x, y, loss: LossModel) -> np.ndarray:
    """Best single linear model for one mode's points under the loss.

    Accepts an empty subset (returns the zero vector) and rank-deficient
    subsets (minimum-norm style solutions).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 2:
        raise ValueError(f"x must be (k, d), got shape {x.shape}")
    if y.shape != (x.shape[0],):
        raise ValueError(f"y must be ({x.shape[0]},), got shape {y.shape}")
    if loss.kind == "squared":
        return _squared_fit(x, y)
    return _absolute_fit(x, y)


def _fit_array(x, y, q0, n, loss: LossModel) -> np.ndarray:
    w = np.zeros((n, x.shape[1]))
    for j in range(n):
        mask = q0 == j
        if mask.any():
            w[j] = solve_mode_regression(x[mask], y[mask], loss)
    return w


def fit_modes(data: Dataset, labeling: Labeling, n: int, loss: LossModel) -> ModelSet:
    """Fit each mode independently to its assigned points."""
    if labeling.N != data.N:
        raise ValueError(f"labeling covers {labeling.N} points, data has {data.N}")
    if np.any(labeling.q > n):
        raise ValueError(f"label exceeds n={n}")
    return ModelSet(_fit_array(data.x, data.y, labeling.q - 1, n, loss))


def _assign_array(x, y, w, loss: LossModel, tie_tol: float):
    losses = loss.residual_loss(y[:, None] - x @ w.T)
    near_min = losses <= losses.min(axis=1)[:, None] + tie_tol
    q0 = np.argmax(near_min, axis=1)
    tied = np.flatnonzero(near_min.sum(axis=1) >= 2)
    return q0, tied


def refine_alternate(data: Dataset, models: ModelSet, loss: LossModel,
                     tol: Tolerances = DEFAULT_TOLERANCES) -> RefineResult:
    """Alternate optimal assignment and per-mode refitting until stable.

    Both half-steps are exact minimizations, so the recorded cost trace is
    non-increasing (up to the ridge used for rank-deficient fits, which
    stays far below zero_tol). Stops when the labeling repeats or a full
    round improves the cost by less than zero_tol; the returned labeling is
    always the optimal assignment for the returned models.
    """
    if models.d != data.d:
        raise ValueError(f"models have d={models.d}, data has d={data.d}")
    x, y = data.x, data.y
    n = models.n
    w = models.w
    q0, ties = _assign_array(x, y, w, loss, tol.tie_tol)
    costs = [_cost_arrays(x, y, w, q0, loss)]
    prev_round = None
    for _ in range(_MAX_REFINE_ROUNDS):
        w = _fit_array(x, y, q0, n, loss)
        costs.append(_cost_arrays(x, y, w, q0, loss))
        new_q0, ties = _assign_array(x, y, w, loss, tol.tie_tol)
        costs.append(_cost_arrays(x, y, w, new_q0, loss))
        stable = np.array_equal(new_q0, q0)
        q0 = new_q0
        if stable:
            break
        if prev_round is not None and prev_round - costs[-1] < tol.zero_tol:
            break
        prev_round = costs[-1]
    return RefineResult(ModelSet(w),
                        Labeling(q0 + 1, tie_set=(ties + 1).tolist()),
                        tuple(costs))


# ---------------------------------------------------------------------------
# Brute force


def _canonical_label_arrays(N: int, n: int):
    """All labelings with modes numbered by first occurrence (q_1 = 1)."""
    q = np.zeros(N, dtype=np.int64)

    def rec(i, used):
        if i == N:
            yield q.copy()
            return
        for v in range(min(used + 1, n)):
            q[i] = v
            yield from rec(i + 1, max(used, v + 1))

    yield from rec(1, 1)


def _canonical_pair(w: np.ndarray, q0: np.ndarray):
    """Canonicalize labels and permute model rows to match."""
    n = w.shape[0]
    remap = {}
    nxt = 0
    for v in q0:
        v = int(v)
        if v not in remap:
            remap[v] = nxt
            nxt += 1
    for j in range(n):
        if j not in remap:
            remap[j] = nxt
            nxt += 1
    q_new = np.fromiter((remap[int(v)] for v in q0), dtype=np.int64, count=len(q0))
    w_new = np.empty_like(w)
    for old, new in remap.items():
        w_new[new] = w[old]
    return w_new, q_new


def brute_force_solve(data: Dataset, n: int, loss: LossModel,
                      budget: int = 2_000_000,
                      tol: Tolerances = DEFAULT_TOLERANCES) -> SolveReport:
    """Exact optimum by trying every labeling (canonical forms only).

    Fixing mode numbers to first-occurrence order drops the n!-fold
    permutation symmetry; the optimum is unchanged. Refuses instances with
    n^N above the budget.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    t0 = time.perf_counter()
    if float(n) ** data.N > budget:
        raise CapsExceededError(
            f"brute force needs {n}^{data.N} labelings, budget is {budget}")
    x, y = data.x, data.y
    best = None
    examined = 0
    for q0 in _canonical_label_arrays(data.N, n):
        examined += 1
        w = _fit_array(x, y, q0, n, loss)
        c = _cost_arrays(x, y, w, q0, loss)
        key = tuple(int(v) for v in q0)
        if best is None or (c, key) < (best[0], best[1]):
            best = (c, key, w)
    cost, key, w = best
    _, ties = _assign_array(x, y, w, loss, tol.tie_tol)
    labeling = Labeling(np.array(key, dtype=np.int64) + 1,
                        tie_set=(ties + 1).tolist())
    return SolveReport(method="brute", cost=cost, models=ModelSet(w),
                       labeling=labeling, candidates_examined=examined,
                       elapsed=time.perf_counter() - t0, status="optimal")


# ---------------------------------------------------------------------------
# Exact enumeration


class CandidateStream:
    """Deterministic stream of candidate labelings for the exact solver.

    One pool of pairwise sign patterns serves every mode pair: each pattern
    is the elementwise product of a dichotomy of the lifted points (deciding
    which of the two modes has the smaller residual on each side of the
    midpoint hyperplane) and a dichotomy of the regressors (the difference
    hyperplane). Combinations across the n(n-1)/2 pairs are majority-voted
    into labelings; vote ties expand into all tied labels up to the
    configured cap, beyond which only the first resolution is emitted and
    coverage_warning is set. Emitted labelings are canonical and deduped.

    Iterating fills the counters combinations_examined and emitted.
    """

    def __init__(self, data: Dataset, n: int, cfg: SolverConfig):
        if n < 1:
            raise ValueError("need n >= 1")
        if data.d > cfg.d_max or n > cfg.n_max:
            raise CapsExceededError(
                f"enumeration capped at d <= {cfg.d_max}, n <= {cfg.n_max}; "
                f"got d={data.d}, n={n}")
        self.data = data
        self.n = n
        self.cfg = cfg
        self.warnings: list = []
        N, d = data.N, data.d
        pairs = n * (n - 1) // 2
        self.combination_bound = (2 ** (d + 1) * comb(N, d)
                                  * 2 ** d * comb(N, d - 1)) ** pairs

        if n == 1:
            self.pair_products = np.ones((1, N), dtype=np.int64)
            self.combination_count = 1
        else:
            if cfg.check_position:
                for name, pts in (("regressor", data.x), ("lifted", data.lifted())):
                    rep = check_general_position(pts)
                    if not rep.ok:
                        self.warnings.append(
                            f"{name} points not in general position "
                            f"(e.g. indices {rep.violations[0]}); optimality "
                            f"is not guaranteed")
            g_set = enumerate_linear_dichotomies(data.lifted(), cfg.tol)
            h_set = enumerate_linear_dichotomies(data.x, cfg.tol)
            gs = np.array([dd.signs for dd in g_set], dtype=np.int64)
            hs = np.array([dd.signs for dd in h_set], dtype=np.int64)
            products = (gs[:, None, :] * hs[None, :, :]).reshape(-1, N)
            self.pair_products = np.unique(products, axis=0)
            self.combination_count = len(self.pair_products) ** pairs
            if self.combination_count > cfg.candidate_budget:
                raise CapsExceededError(
                    f"{self.combination_count} classifier combinations exceed "
                    f"the budget {cfg.candidate_budget}")
        self.combinations_examined = 0
        self.emitted = 0
        self.coverage_warning = False
        self.tie_truncations = 0

    def __iter__(self):
        N, n = self.data.N, self.n
        if n == 1:
            self.combinations_examined = 1
            self.emitted = 1
            yield Labeling(np.ones(N, dtype=np.int64))
            return
        pair_index = list(itertools.combinations(range(n), 2))
        P = len(self.pair_products)
        seen = set()
        cap = self.cfg.max_tie_alterations
        for combo in itertools.product(range(P), repeat=len(pair_index)):
            self.combinations_examined += 1
            votes = np.zeros((N, n), dtype=np.int64)
            for idx, (j, k) in zip(combo, pair_index):
                p = self.pair_products[idx]
                votes[:, j] += p > 0
                votes[:, k] += p < 0
            winners = votes == votes.max(axis=1)[:, None]
            base = winners.argmax(axis=1)
            tied_rows = np.flatnonzero(winners.sum(axis=1) > 1)

            variants = [base]
            if tied_rows.size:
                options = [np.flatnonzero(winners[r]) for r in tied_rows]
                extra = 1
                for o in options:
                    extra *= len(o)
                extra -= 1
                if extra <= cap:
                    for pick in itertools.product(*options):
                        var = base.copy()
                        var[tied_rows] = pick
                        if not np.array_equal(var, base):
                            variants.append(var)
                else:
                    self.coverage_warning = True
                    self.tie_truncations += 1

            for q0 in variants:
                canon = canonical_label_array(q0)
                key = canon.tobytes()
                if key in seen:
                    continue
                seen.add(key)
                self.emitted += 1
                yield Labeling(canon + 1)


def enumerate_candidate_labelings(data: Dataset, n: int,
                                  cfg: SolverConfig | None = None) -> CandidateStream:
    """Candidate labelings covering every optimal classification of the data."""
    return CandidateStream(data, n, cfg or SolverConfig())


def enumeration_solve(data: Dataset, n: int, loss: LossModel,
                      cfg: SolverConfig | None = None) -> SolveReport:
    """Exact solver via candidate labeling enumeration plus refinement.

    Fits every candidate labeling, refines it by alternating minimization
    (which cannot increase cost), and keeps the best result. Ties on cost
    break toward the lexicographically smallest canonical labeling, so the
    report is deterministic, including under threads > 1.
    """
    cfg = cfg or SolverConfig()
    t0 = time.perf_counter()
    stream = CandidateStream(data, n, cfg)
    candidates = list(stream)
    x, y = data.x, data.y

    def evaluate(lab: Labeling):
        w0 = _fit_array(x, y, lab.q - 1, n, loss)
        res = refine_alternate(data, ModelSet(w0), loss, cfg.tol)
        w_c, q_c = _canonical_pair(res.models.w, res.labeling.q - 1)
        cost = _cost_arrays(x, y, w_c, q_c, loss)
        return cost, tuple(int(v) for v in q_c), w_c, res.labeling.tie_set

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(evaluate, candidates))
    else:
        results = [evaluate(lab) for lab in candidates]

    best = min(results, key=lambda r: (r[0], r[1]))
    cost, key, w, tie_set = best
    labeling = Labeling(np.array(key, dtype=np.int64) + 1, tie_set=tie_set)
    warnings = tuple(stream.warnings)
    status = "optimal"
    if stream.coverage_warning:
        status = "heuristic"
        warnings = warnings + (
            f"majority-vote tie expansion truncated {stream.tie_truncations} "
            f"times (cap {cfg.max_tie_alterations}); coverage not guaranteed",)
    return SolveReport(method="enum", cost=cost, models=ModelSet(w),
                       labeling=labeling,
                       candidates_examined=stream.combinations_examined,
                       elapsed=time.perf_counter() - t0, status=status,
                       warnings=warnings)


# ---------------------------------------------------------------------------
# Noiseless exact solver


def noiseless_solve(data: Dataset, n: int,
                    cfg: SolverConfig | None = None) -> SolveReport:
    """Exact solver for data admitting a zero-error switching-linear fit.

    Every mode of a zero-error solution is determined by d of its points, so
    interpolating each d-subset of the data yields a candidate pool that
    must contain all true modes. The solver deduplicates candidates by their
    exact-fit sets and searches for n of them covering every point
    (largest fit set first, branching on the lowest uncovered point). A
    found cover is verified by assignment cost <= zero_tol; if none exists
    the best greedy collection is reported with status infeasible, meaning
    no exact fit was certified.
    """
    cfg = cfg or SolverConfig()
    t0 = time.perf_counter()
    if n < 1:
        raise ValueError("need n >= 1")
    x, y = data.x, data.y
    N, d = data.N, data.d
    if N < d:
        raise ValueError(f"need at least d={d} points, got N={N}")
    n_subsets = comb(N, d)
    if n_subsets > cfg.candidate_budget:
        raise CapsExceededError(
            f"{n_subsets} interpolation subsets exceed the budget "
            f"{cfg.candidate_budget}")

    subsets = np.array(list(itertools.combinations(range(N), d)))
    A = x[subsets]                                   # (S, d, d)
    b = y[subsets]                                   # (S, d)
    point_tol = cfg.tol.zero_tol * (1.0 + np.abs(y))

    ws = np.full((len(subsets), d), np.nan)
    dets = np.abs(np.linalg.det(A))
    solvable = dets > 1e-300
    if solvable.any():
        ws[solvable] = np.linalg.solve(A[solvable], b[solvable][..., None])[..., 0]
    for r in np.flatnonzero(~solvable):
        w, *_ = np.linalg.lstsq(A[r], b[r], rcond=None)
        ws[r] = w
    good = np.all(np.isfinite(ws), axis=1)
    # keep only candidates that actually interpolate their own subset
    interp_err = np.abs(np.einsum("sij,sj->si", A, np.nan_to_num(ws)) - b)
    good &= np.all(interp_err <= cfg.tol.zero_tol * (1.0 + np.abs(b)), axis=1)

    cand_w = []
    cand_fit = []
    seen_fits = set()
    resid = np.abs(y[None, :] - np.nan_to_num(ws) @ x.T)     # (S, N)
    fits = resid <= point_tol[None, :]
    order = np.argsort(-fits.sum(axis=1), kind="stable")
    for r in order:
        if not good[r]:
            continue
        key = fits[r].tobytes()
        if key in seen_fits:
            continue
        seen_fits.add(key)
        cand_w.append(ws[r])
        cand_fit.append(fits[r])

    def finish(chosen, status):
        # cost under squared loss; any admissible loss is zero exactly when
        # every residual is zero, so certification is loss-independent
        if chosen:
            w = np.array([cand_w[c] for c in chosen])
            while w.shape[0] < n:
                w = np.vstack([w, w[:1]])
        else:
            w = np.zeros((n, d))
        q0, ties = _assign_array(x, y, w, SQUARED, cfg.tol.tie_tol)
        w_c, q_c = _canonical_pair(w, q0)
        cost = _cost_arrays(x, y, w_c, q_c, SQUARED)
        labeling = Labeling(q_c + 1, tie_set=(ties + 1).tolist())
        return SolveReport(method="noiseless", cost=cost, models=ModelSet(w_c),
                           labeling=labeling, candidates_examined=len(subsets),
                           elapsed=time.perf_counter() - t0, status=status)

    if not cand_w:
        return finish([], "infeasible")

    fit_matrix = np.array(cand_fit)                  # (C, N) boolean
    sizes = fit_matrix.sum(axis=1)
    max_size = int(sizes.max())
    by_point = [np.flatnonzero(fit_matrix[:, i]) for i in range(N)]
    nodes = 0

    def search(uncovered, modes_left):
        nonlocal nodes
        nodes += 1
        if nodes > cfg.node_budget:
            raise CapsExceededError(
                f"noiseless cover search exceeded {cfg.node_budget} nodes")
        remaining = np.flatnonzero(uncovered)
        if remaining.size == 0:
            return []
        if modes_left == 0 or remaining.size > modes_left * max_size:
            return None
        i = remaining[0]
        for c in by_point[i]:
            sub = search(uncovered & ~fit_matrix[c], modes_left - 1)
            if sub is not None:
                return [int(c)] + sub
        return None

    cover = search(np.ones(N, dtype=bool), n)
    if cover is not None:
        report = finish(cover, "optimal")
        if report.cost <= cfg.tol.zero_tol:
            return report
    # no certified zero-cost fit: report the best greedy collection
    chosen = []
    uncovered = np.ones(N, dtype=bool)
    for _ in range(min(n, len(cand_w))):
        gains = fit_matrix[:, uncovered].sum(axis=1)
        c = int(np.argmax(gains))
        chosen.append(c)
        uncovered &= ~fit_matrix[c]
    return finish(chosen, "infeasible")


# ---------------------------------------------------------------------------
# Alternating-minimization heuristic


def altmin_solve(data: Dataset, n: int, loss: LossModel, restarts: int = 10,
                 seed: int = 0,
                 tol: Tolerances = DEFAULT_TOLERANCES) -> SolveReport:
    """Seeded multi-start alternating minimization. No optimality guarantee.

    Each restart interpolates n disjoint random d-subsets for the initial
    models (falling back to Gaussian parameters when N < n d), then refines.
    Deterministic for a fixed seed.
    """
    if restarts < 1:
        raise ValueError("need restarts >= 1")
    t0 = time.perf_counter()
    x, y = data.x, data.y
    N, d = data.N, data.d
    best = None
    for r in range(restarts):
        rng = np.random.default_rng([seed, r])
        if N >= n * d:
            idx = rng.choice(N, size=n * d, replace=False).reshape(n, d)
            w0 = np.zeros((n, d))
            for j in range(n):
                w0[j], *_ = np.linalg.lstsq(x[idx[j]], y[idx[j]], rcond=None)
            if not np.all(np.isfinite(w0)):
                w0 = rng.standard_normal((n, d))
        else:
            w0 = rng.standard_normal((n, d))
        res = refine_alternate(data, ModelSet(w0), loss, tol)
        w_c, q_c = _canonical_pair(res.models.w, res.labeling.q - 1)
        cost = _cost_arrays(x, y, w_c, q_c, loss)
        key = tuple(int(v) for v in q_c)
        if best is None or (cost, key) < (best[0], best[1]):
            best = (cost, key, w_c, res.labeling.tie_set)
    cost, key, w, tie_set = best
    labeling = Labeling(np.array(key, dtype=np.int64) + 1, tie_set=tie_set)
    return SolveReport(method="altmin", cost=cost, models=ModelSet(w),
                       labeling=labeling, candidates_examined=restarts,
                       elapsed=time.perf_counter() - t0, status="heuristic")


def solve_instance(data: Dataset, n: int, loss: LossModel, method: str,
                   cfg: SolverConfig | None = None) -> SolveReport:
    """Dispatch to a solver by method name."""
    cfg = cfg or SolverConfig()
    if method == "brute":
        return brute_force_solve(data, n, loss, budget=cfg.brute_budget,
                                 tol=cfg.tol)
    if method == "enum":
        return enumeration_solve(data, n, loss, cfg)
    if method == "noiseless":
        return noiseless_solve(data, n, cfg)
    if method == "altmin":
        return altmin_solve(data, n, loss, restarts=cfg.restarts,
                            seed=cfg.seed, tol=cfg.tol)
    raise ValueError(f"unknown method {method!r} (expected one of {SOLVER_METHODS})")
