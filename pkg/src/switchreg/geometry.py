"""Point-set geometry: general position checks and linear dichotomy enumeration.

A linear dichotomy of points p_1..p_N in R^m is a sign pattern
(sign(h . p_1), ..., sign(h . p_N)) for some normal vector h with no point
exactly on the separating hyperplane {p : h . p = 0}. The enumeration here
walks all hyperplanes spanned by (m-1)-point subsets together with the
origin and perturbs their normals to both sides of every spanning point,
which reaches every realizable pattern on general-position data. An
independent angle-sweep oracle covers m <= 2 for verification.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

import numpy as np
from scipy.optimize import linprog

from .core import DEFAULT_TOLERANCES, Tolerances

__all__ = [
    "Dichotomy",
    "DichotomySet",
    "GeneralPositionReport",
    "check_general_position",
    "enumerate_linear_dichotomies",
    "sweep_dichotomies_oracle",
]

# Relative singular-value threshold deciding when a subset is rank-deficient.
_RANK_TOL = 1e-9

# Degenerate branch variants are abandoned past this many undecided points.
_MAX_BRANCH_POINTS = 6


@dataclass(frozen=True)
class Dichotomy:
    """A realizable sign pattern with a witnessing normal vector.

    Equality and hashing use only the signs, so sets of dichotomies from
    different construction methods compare as intended.
    """

    signs: tuple
    witness: np.ndarray = field(compare=False)

    def __post_init__(self):
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")


@dataclass(frozen=True)
class DichotomySet:
    """Enumeration result: sorted dichotomies plus construction diagnostics."""

    dichotomies: tuple
    skipped_degenerate: int = 0
    branch_attempts: int = 0
    branch_dropped: int = 0

    def __iter__(self):
        return iter(self.dichotomies)

    def __len__(self):
        return len(self.dichotomies)

    def patterns(self) -> frozenset:
        return frozenset(d.signs for d in self.dichotomies)


@dataclass(frozen=True)
class GeneralPositionReport:
    """Outcome of the affine-independence scan over (m+1)-subsets.

    violations holds 1-based index subsets found on a common hyperplane
    (truncated to the first 64). sampled marks the randomized mode used for
    large N, where only checked_subsets random subsets were examined.
    """

    ok: bool
    violations: tuple = ()
    sampled: bool = False
    checked_subsets: int = 0


def check_general_position(points, *, max_exhaustive: int = 20000,
                           samples: int = 2000, seed: int = 0,
                           rank_tol: float = _RANK_TOL) -> GeneralPositionReport:
    """Verify that no m+1 points lie on a common affine hyperplane of R^m.

    Exhaustive over all (m+1)-subsets when their number is at most
    max_exhaustive, otherwise a seeded random sample of subsets is tested
    and the report says so.
    """
    points = np.asarray(points, dtype=float)
    if points.ndim != 2:
        raise ValueError(f"points must be (N, m), got shape {points.shape}")
    if not np.all(np.isfinite(points)):
        raise ValueError("points must be finite")
    N, m = points.shape
    if N < m + 1:
        return GeneralPositionReport(ok=True)

    total = comb(N, m + 1)
    if total <= max_exhaustive:
        subsets = np.array(list(itertools.combinations(range(N), m + 1)))
        sampled = False
    else:
        rng = np.random.default_rng(seed)
        subsets = np.array([rng.choice(N, size=m + 1, replace=False)
                            for _ in range(samples)])
        sampled = True

    pts = points[subsets]                          # (K, m+1, m)
    diffs = pts[:, 1:, :] - pts[:, :1, :]          # (K, m, m)
    sv = np.linalg.svd(diffs, compute_uv=False)    # (K, m)
    bad = sv[:, -1] <= rank_tol * np.maximum(1.0, sv[:, 0])
    violations = tuple(tuple(int(i) + 1 for i in subsets[r])
                       for r in np.flatnonzero(bad)[:64])
    return GeneralPositionReport(ok=not violations, violations=violations,
                                 sampled=sampled, checked_subsets=len(subsets))


def _max_margin_witness(points, signs, scale, sign_tol):
    """Strictly separating normal for a requested sign pattern, or None.

    Solves max t subject to signs_i (p_i . h) >= t * scale_i with h in the
    unit box; the pattern is realizable iff the optimum margin is positive.
    """
    N, m = points.shape
    c = np.zeros(m + 1)
    c[-1] = -1.0
    A = np.hstack([-(signs[:, None] * points), scale[:, None]])
    res = linprog(c, A_ub=A, b_ub=np.zeros(N),
                  bounds=[(-1.0, 1.0)] * m + [(0.0, 1.0)], method="highs")
    if res.status != 0 or res.x is None:
        return None
    t = res.x[-1]
    if t <= 10.0 * sign_tol:
        return None
    return np.array(res.x[:m])


def _verified(points, signs, h, scale, sign_tol) -> bool:
    return bool(np.all(signs * (points @ h) > sign_tol * scale))


def enumerate_linear_dichotomies(points, tol: Tolerances = DEFAULT_TOLERANCES) -> DichotomySet:
    """All sign patterns of the points under through-origin linear classifiers.

    For each (m-1)-subset the base hyperplane is the span of the subset; its
    unit normal h0 comes from the SVD null space. Spanning points sit exactly
    on the hyperplane, so their signs are free: offsetting h0 along the dual
    directions (columns of B^T (B B^T)^{-1}) realizes every choice in
    {+1, -1}^(m-1), and the global flip doubles that. Points off the
    hyperplane keep sign(h0 . p_i); other points on it (allowed in general
    position when exactly m lie on a common hyperplane through the origin)
    get the sign of their first-order term. Only points degenerate at first
    order branch both ways, and such variants are kept only when an explicit
    max-margin witness exists. Cardinality is at most 2^m binom(N, m-1) and
    the set is closed under global negation.
    """
    points = np.asarray(points, dtype=float)
    if points.ndim != 2:
        raise ValueError(f"points must be (N, m), got shape {points.shape}")
    if not np.all(np.isfinite(points)):
        raise ValueError("points must be finite")
    N, m = points.shape
    if N <= m:
        raise ValueError(f"need more points than dimensions, got N={N}, m={m}")
    norms = np.linalg.norm(points, axis=1)
    if np.any(norms <= tol.sign_tol):
        raise ValueError("a point at the origin admits no strict classification")
    scale = 1.0 + norms

    found: dict[tuple, Dichotomy] = {}
    skipped = 0
    branch_attempts = 0
    branch_dropped = 0

    if m == 1:
        base = np.where(points[:, 0] > 0.0, 1, -1)
        for g in (1, -1):
            signs = tuple(int(v) for v in g * base)
            found.setdefault(signs, Dichotomy(signs, np.array([float(g)])))
        return DichotomySet(tuple(found[k] for k in sorted(found)))

    for subset in itertools.combinations(range(N), m - 1):
        B = points[list(subset)]
        svals = np.linalg.svd(B, compute_uv=False)
        if svals[-1] <= _RANK_TOL * max(1.0, svals[0]):
            skipped += 1
            continue
        h0 = np.linalg.svd(B)[2][-1]                 # unit normal to span(B)
        v = points @ h0
        on_plane = np.abs(v) <= tol.sign_tol * scale
        off = ~on_plane
        Dmat = B.T @ np.linalg.inv(B @ B.T)          # dual directions, B @ Dmat = I
        W = points @ Dmat                            # (N, m-1) first-order terms
        min_clear = float(np.min(np.abs(v[off]))) if np.any(off) else 1.0
        w_scale = 1.0 + np.abs(W).sum(axis=1)

        for s in itertools.product((1.0, -1.0), repeat=m - 1):
            sv_ = np.array(s)
            t = W @ sv_
            coupling = float(np.max(np.abs(t[off]))) if np.any(off) else 0.0
            delta = 0.5 * min_clear / max(1.0, coupling)
            direction = h0 + delta * (Dmat @ sv_)
            for g in (1.0, -1.0):
                base_signs = np.zeros(N, dtype=np.int64)
                base_signs[off] = np.where(v[off] > 0, 1, -1)
                first = np.where(t > 0, 1, -1)
                decided_on = on_plane & (np.abs(t) > tol.sign_tol * w_scale)
                base_signs[decided_on] = first[decided_on]
                base_signs = (g * base_signs).astype(np.int64)
                undecided = np.flatnonzero(on_plane & ~decided_on)

                if undecided.size == 0:
                    key = tuple(int(b) for b in base_signs)
                    if key in found:
                        continue
                    h = g * direction
                    if not _verified(points, base_signs, h, scale, tol.sign_tol):
                        h = _max_margin_witness(points, base_signs, scale,
                                                tol.sign_tol)
                        if h is None:
                            branch_dropped += 1
                            continue
                    found[key] = Dichotomy(key, h)
                    continue

                if undecided.size > _MAX_BRANCH_POINTS:
                    branch_dropped += 1
                    continue
                for flips in itertools.product((1, -1), repeat=undecided.size):
                    branch_attempts += 1
                    cand = base_signs.copy()
                    cand[undecided] = flips
                    key = tuple(int(b) for b in cand)
                    if key in found:
                        continue
                    h = _max_margin_witness(points, cand, scale, tol.sign_tol)
                    if h is None:
                        branch_dropped += 1
                        continue
                    found[key] = Dichotomy(key, h)

    return DichotomySet(tuple(found[k] for k in sorted(found)),
                        skipped_degenerate=skipped,
                        branch_attempts=branch_attempts,
                        branch_dropped=branch_dropped)


def sweep_dichotomies_oracle(points, tol: Tolerances = DEFAULT_TOLERANCES) -> DichotomySet:
    """First-principles dichotomy enumeration for m <= 2.

    m=1 has exactly the two patterns (signs of the coordinates and their
    negation). For m=2 the normal direction h(theta) = (cos theta, sin theta)
    is swept through the circle; the pattern only changes at the 2N critical
    angles where h is orthogonal to some point, so sampling strictly between
    consecutive critical angles enumerates everything.
    """
    points = np.asarray(points, dtype=float)
    if points.ndim != 2:
        raise ValueError(f"points must be (N, m), got shape {points.shape}")
    N, m = points.shape
    if m > 2:
        raise ValueError("sweep oracle supports only m <= 2")
    norms = np.linalg.norm(points, axis=1)
    if np.any(norms <= tol.sign_tol):
        raise ValueError("a point at the origin admits no strict classification")
    scale = 1.0 + norms

    found: dict[tuple, Dichotomy] = {}
    if m == 1:
        base = np.where(points[:, 0] > 0.0, 1, -1)
        for g in (1, -1):
            signs = tuple(int(v) for v in g * base)
            found.setdefault(signs, Dichotomy(signs, np.array([float(g)])))
        return DichotomySet(tuple(found[k] for k in sorted(found)))

    ang = np.arctan2(points[:, 1], points[:, 0])
    crit = np.sort(np.concatenate([ang + np.pi / 2, ang - np.pi / 2]) % (2 * np.pi))
    merged = [float(crit[0])]
    for a in crit[1:]:
        if a - merged[-1] > 1e-12:
            merged.append(float(a))
    mids = [(merged[i] + merged[i + 1]) / 2 for i in range(len(merged) - 1)]
    mids.append((merged[-1] + merged[0] + 2 * np.pi) / 2)

    for theta in mids:
        h = np.array([np.cos(theta), np.sin(theta)])
        vals = points @ h
        if np.any(np.abs(vals) <= tol.sign_tol * scale):
            continue            # landed on a coincident critical angle
        signs = tuple(int(v) for v in np.where(vals > 0, 1, -1))
        found.setdefault(signs, Dichotomy(signs, h))
    return DichotomySet(tuple(found[k] for k in sorted(found)))
