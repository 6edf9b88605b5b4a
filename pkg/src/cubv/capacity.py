"""Capacity analysis for linear classifiers with bias.

General position, exact/feasibility separability checks, shattering, VC
dimension verification, orthogonal projection, and the census of balanced
cluster dichotomies used to grade multi-cluster problem difficulty.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np
from scipy.optimize import linprog

from .rng import TAG_REDRAW, derive_seed, make_rng

GENERAL_POSITION_TOL = 1e-9
SEPARABILITY_MARGIN_TOL = 1e-9
MAX_SHATTER_POINTS = 20
MAX_CENSUS_CLUSTERS = 12


def as_points(points) -> np.ndarray:
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] < 1:
        raise ValueError("points must be a non-empty 2-D array (rows are vectors)")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points contain non-finite values")
    return pts


def is_general_position(points, tol: float = GENERAL_POSITION_TOL) -> bool:
    """True iff every subset of at most n points is linearly independent.

    Rank is decided by modified Gram-Schmidt with the residual threshold
    taken relative to the largest vector norm in the subset. It suffices to
    test subsets of size min(n, m): independence is hereditary.
    """
    pts = as_points(points)
    m, n = pts.shape
    size = min(n, m)
    norms = np.linalg.norm(pts, axis=1)
    for subset in combinations(range(m), size):
        scale = norms[list(subset)].max()
        basis = []
        for idx in subset:
            r = pts[idx].copy()
            for q in basis:
                r -= (r @ q) * q
            rn = np.linalg.norm(r)
            if rn <= tol * scale:
                return False
            basis.append(r / rn)
    return True


def is_separable(points, labels) -> bool:
    """Strict linear separability, decided by exact margin maximization.

    Solves the linear program  max gamma  s.t.  y_i (w.x_i + b) >= gamma,
    ||w||_inf <= 1  on max-abs normalized points and accepts iff the optimal
    margin clears a small strictness threshold. A uniformly-labelled set is
    separable by convention (any hyperplane beyond the hull works).
    """
    pts = as_points(points)
    lab = np.asarray(labels, dtype=np.int64)
    if lab.shape[0] != pts.shape[0]:
        raise ValueError("labels length must match point count")
    ones = int(lab.sum())
    if ones == 0 or ones == lab.shape[0]:
        return True
    y = 2.0 * lab.astype(np.float64) - 1.0
    scale = float(np.abs(pts).max())
    if scale == 0.0:
        return False  # all points coincide at the origin with mixed labels
    Z = pts / scale
    m, n = Z.shape
    # variables (w, b, gamma); maximize gamma
    a_ub = np.hstack([-y[:, None] * Z, -y[:, None], np.ones((m, 1))])
    cost = np.zeros(n + 2)
    cost[-1] = -1.0
    bounds = [(-1.0, 1.0)] * n + [(-(n + 1.0), n + 1.0), (None, 1.0)]
    result = linprog(cost, A_ub=a_ub, b_ub=np.zeros(m), bounds=bounds,
                     method="highs")
    return bool(result.status == 0 and result.x[-1] > SEPARABILITY_MARGIN_TOL)


def shatter_check(points) -> bool:
    """True iff all 2^m labelings of the m points are linearly separable."""
    pts = as_points(points)
    m = pts.shape[0]
    if m > MAX_SHATTER_POINTS:
        raise ValueError(f"shatter enumeration limited to {MAX_SHATTER_POINTS} points")
    # label inversions are separability-equivalent: fix point 0 to class 0
    for code in range(2 ** (m - 1)):
        lab = np.zeros(m, dtype=np.int64)
        for bit in range(m - 1):
            lab[bit + 1] = (code >> bit) & 1
        if not is_separable(pts, lab):
            return False
    return True


def vc_verify(n: int, trials: int = 100, seed: int = 0) -> int:
    """Largest m for which some random general-position m-set in n-D shatters.

    Scans m = 2 .. n+3 with ``trials`` seeded draws each; degenerate draws are
    redrawn with the next derived seed. For linear classifiers with bias the
    answer is n+1, and the scan doubles as a check that no (n+2)-set shatters.
    """
    if n < 1 or n > 4:
        raise ValueError("vc_verify supports 1 <= n <= 4 (enumeration cost)")
    largest = 0
    for m in range(2, n + 4):
        found = False
        for t in range(trials):
            pts = _general_position_draw(n, m, derive_seed(seed, n, m, t))
            if shatter_check(pts):
                found = True
                break
        if found:
            largest = m
        else:
            break
    return largest


def _general_position_draw(n: int, m: int, seed: int) -> np.ndarray:
    for attempt in range(64):
        rng = make_rng(derive_seed(seed, TAG_REDRAW, attempt))
        pts = rng.standard_normal((m, n))
        if is_general_position(pts):
            return pts
    raise RuntimeError("could not draw a general-position set (degenerate RNG stream?)")


def project_orthogonal(points, z0) -> np.ndarray:
    """Project each point onto the subspace orthogonal to z0."""
    pts = as_points(points)
    z = np.asarray(z0, dtype=np.float64).reshape(-1)
    if z.shape[0] != pts.shape[1]:
        raise ValueError("z0 dimension must match the points")
    zz = float(z @ z)
    if zz == 0.0:
        raise ValueError("z0 must be nonzero")
    return pts - np.outer(pts @ z / zz, z)


@dataclass(frozen=True)
class DichotomyCensus:
    """Enumeration of balanced cluster-to-group assignments, inversions removed."""

    n_clusters: int
    total_balanced: int
    distinct_after_inversion: int
    per_assignment: tuple
    separable_count: int | None = None


def balanced_assignments(n_clusters: int) -> list[int]:
    """Distinct balanced assignments as bitmasks (bit i = group of cluster i).

    Label inversions are removed by keeping the representative whose first
    cluster sits in group 0; masks are returned in ascending order.
    """
    if n_clusters % 2 != 0 or n_clusters < 2:
        raise ValueError("the cluster count must be even and at least 2")
    if n_clusters > MAX_CENSUS_CLUSTERS:
        raise ValueError(f"census limited to {MAX_CENSUS_CLUSTERS} clusters")
    half = n_clusters // 2
    masks = [m for m in range(1 << n_clusters)
             if bin(m).count("1") == half and not m & 1]
    return sorted(masks)


def balanced_dichotomies(n_clusters: int) -> DichotomyCensus:
    masks = balanced_assignments(n_clusters)
    return DichotomyCensus(
        n_clusters=n_clusters,
        total_balanced=comb(n_clusters, n_clusters // 2),
        distinct_after_inversion=len(masks),
        per_assignment=tuple((m, None) for m in masks))


def classify_assignments(centroids, n_clusters: int | None = None) -> DichotomyCensus:
    """Mark every distinct balanced assignment of the centroids as separable or not."""
    pts = as_points(centroids)
    if n_clusters is None:
        n_clusters = pts.shape[0]
    if n_clusters != pts.shape[0]:
        raise ValueError("centroid count must equal n_clusters")
    masks = balanced_assignments(n_clusters)
    rows = []
    n_sep = 0
    for mask in masks:
        lab = np.array([(mask >> i) & 1 for i in range(n_clusters)], dtype=np.int64)
        sep = is_separable(pts, lab)
        n_sep += int(sep)
        rows.append((mask, sep))
    return DichotomyCensus(
        n_clusters=n_clusters,
        total_balanced=comb(n_clusters, n_clusters // 2),
        distinct_after_inversion=len(masks),
        per_assignment=tuple(rows),
        separable_count=n_sep)


def assignment_mask(n_clusters: int, assignment_id: int) -> int:
    masks = balanced_assignments(n_clusters)
    if not 0 <= assignment_id < len(masks):
        raise ValueError(
            f"assignment_id {assignment_id} out of range for {n_clusters} clusters "
            f"({len(masks)} distinct balanced dichotomies)")
    return masks[assignment_id]


def well_separated_hexagon(radius: float = 6.0) -> np.ndarray:
    """The six-centroid reference layout: a regular hexagon in 2-D.

    Exactly the balanced splits into two contiguous arcs of three vertices are
    linearly separable, so the census classifies 3 separable / 7 not.
    """
    angles = np.arange(6) * (np.pi / 3.0)
    return np.column_stack([radius * np.cos(angles), radius * np.sin(angles)])


def census_to_json(census: DichotomyCensus) -> str:
    payload = {
        "n_clusters": census.n_clusters,
        "total_balanced": census.total_balanced,
        "distinct_after_inversion": census.distinct_after_inversion,
        "separable_count": census.separable_count,
        "assignments": [
            {"bitmask": mask, "separable": sep}
            for mask, sep in census.per_assignment
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True)
