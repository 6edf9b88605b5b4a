"""Independent oracles for derived expected values.

Everything here is deliberately brute-force and shares no code path with the
library: grid searches, exhaustive enumeration, bisection, explicit loops.
"""

import math
from itertools import combinations

import numpy as np


def grid_svm_objective_1d(x, labels01, c_reg, lo=-5.0, hi=5.0, step=1e-3):
    """Minimum hinge objective over the (w, b) grid for 1-D data."""
    x = np.asarray(x, dtype=np.float64)
    y = 2.0 * np.asarray(labels01, dtype=np.float64) - 1.0
    ws = np.arange(lo, hi + step / 2, step)
    bs = np.arange(lo, hi + step / 2, step)
    best = np.inf
    chunk = 200
    for start in range(0, len(ws), chunk):
        w = ws[start:start + chunk]
        # margins[i, j, k] over (points, w, b)
        a = 1.0 - y[:, None, None] * (x[:, None, None] * w[None, :, None]
                                      + bs[None, None, :])
        np.maximum(a, 0.0, out=a)
        obj = 0.5 * w[:, None] ** 2 + c_reg * a.sum(axis=0)
        m = float(obj.min())
        if m < best:
            best = m
    return best


def pair_hyperplane_separable_2d(points, labels01):
    """Exact strict separability in 2-D by enumerating candidate normals.

    If the hulls are strictly separable the closest-feature pair is
    vertex-vertex (normal = difference of two points) or vertex-edge /
    edge-edge (normal = perpendicular of a point difference), so testing all
    pairwise differences and their perpendiculars is exhaustive.
    """
    pts = np.asarray(points, dtype=np.float64)
    lab = np.asarray(labels01, dtype=np.int64)
    if lab.min() == lab.max():
        return True
    m = pts.shape[0]
    candidates = []
    for i in range(m):
        for j in range(i + 1, m):
            diff = pts[i] - pts[j]
            if np.linalg.norm(diff) < 1e-300:
                continue
            candidates.append(diff)
            candidates.append(np.array([-diff[1], diff[0]]))
    for w in candidates:
        proj = pts @ w
        lo0, hi0 = proj[lab == 0].min(), proj[lab == 0].max()
        lo1, hi1 = proj[lab == 1].min(), proj[lab == 1].max()
        if hi0 < lo1 or hi1 < lo0:
            return True
    return False


def bisect_inv_norm_cdf(p, tol=1e-14):
    """Invert Phi by bisection on erfc, kept in its accurate lower-tail regime.

    For p > 0.5 the target is -Phi^{-1}(1 - p); the subtraction is exact
    there, and bisecting only the lower tail avoids erfc saturation near 1.
    """
    if p > 0.5:
        return -bisect_inv_norm_cdf(1.0 - p, tol)
    lo, hi = -40.0, 0.5
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if 0.5 * math.erfc(-mid / math.sqrt(2.0)) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def phi(x):
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def mixture_linear_error(clusters, w, b):
    """Exact 0/1 error of sign(w.x + b > 0) on a Gaussian-mixture labelling.

    clusters: iterable of (centroid, sigma, weight, group); weights sum to 1
    per group and groups are equally likely.
    """
    w = np.asarray(w, dtype=np.float64)
    norm = float(np.linalg.norm(w))
    if norm == 0.0:
        # constant classifier: predicts by sign of b
        pred_one = b > 0
        err = 0.0
        for centroid, sigma, weight, group in clusters:
            p_wrong = float(int(pred_one) != group)
            err += 0.5 * weight * p_wrong
        return err
    err = 0.0
    for centroid, sigma, weight, group in clusters:
        z = (float(w @ np.asarray(centroid)) + b) / (sigma * norm)
        p_pred_one = phi(z)  # P(w.x + b > 0)
        p_wrong = (1.0 - p_pred_one) if group == 1 else p_pred_one
        err += 0.5 * weight * p_wrong
    return err


def best_linear_mixture_error_2d(clusters, n_angles=720, offsets=None):
    """Grid minimum of the exact mixture error over 2-D linear rules."""
    if offsets is None:
        offsets = np.linspace(-10.0, 10.0, 801)
    best = math.inf
    for theta in np.linspace(0.0, math.pi, n_angles, endpoint=False):
        w = np.array([math.cos(theta), math.sin(theta)])
        for b in offsets:
            for direction in (1.0, -1.0):
                err = mixture_linear_error(clusters, direction * w, direction * b)
                if err < best:
                    best = err
    return best


def gram_general_position(points, tol=1e-12):
    """Determinant-based general position: Gram determinant of every subset.

    Rows are normalized to unit length so det(G) is the squared volume of a
    unit-edge parallelepiped: order one for random draws, zero up to float
    noise (~1e-15) for dependent subsets. The threshold splits the two
    regimes; near-threshold inputs are out of scope for this oracle.
    """
    pts = np.asarray(points, dtype=np.float64)
    m, n = pts.shape
    for size in range(1, min(m, n) + 1):
        for subset in combinations(range(m), size):
            v = pts[list(subset)]
            norms = np.linalg.norm(v, axis=1)
            if norms.min() == 0.0:
                return False
            g = (v / norms[:, None]) @ (v / norms[:, None]).T
            if np.linalg.det(g) <= tol:
                return False
    return True


def streaming_mean_var(values):
    """Welford's one-pass mean/variance (ddof=1)."""
    mean = 0.0
    m2 = 0.0
    count = 0
    for v in values:
        count += 1
        delta = v - mean
        mean += delta / count
        m2 += delta * (v - mean)
    return mean, (m2 / (count - 1) if count > 1 else 0.0)


def cohens_d_two_pass(features, labels01):
    """Per-dimension streaming stats, then the pooled multivariate d."""
    features = np.asarray(features, dtype=np.float64)
    labels01 = np.asarray(labels01, dtype=np.int64)
    n_dim = features.shape[1]
    n0 = int(np.sum(labels01 == 0))
    n1 = int(np.sum(labels01 == 1))
    dist_sq = 0.0
    pooled_sum = 0.0
    for j in range(n_dim):
        m0, v0 = streaming_mean_var(features[labels01 == 0, j])
        m1, v1 = streaming_mean_var(features[labels01 == 1, j])
        dist_sq += (m1 - m0) ** 2
        pooled_sum += ((n0 - 1) * v0 + (n1 - 1) * v1) / (n0 + n1 - 2)
    return math.sqrt(dist_sq) / math.sqrt(pooled_sum / n_dim)


def pac_bayes_grid_delta(empirical_risk, n_samples, kl, eta,
                         hi=50.0, step=1e-4):
    """Dense lambda-grid minimum of the deviation objective."""
    lam = np.arange(0.5 + step, hi + step / 2, step)
    complexity = (kl + math.log(1.0 / eta)) / n_samples
    vals = (empirical_risk + 2.0 * lam * lam * complexity) / (2.0 * lam - 1.0)
    idx = int(np.argmin(vals))
    return float(vals[idx]), float(lam[idx])
