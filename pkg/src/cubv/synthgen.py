"""Synthetic two-group Gaussian benchmarks with controlled effect size.

Groups are mixtures of isotropic Gaussian clusters. A problem is described by
explicit cluster specs (centroid, scale, weight, group); ``make_problem_spec``
builds them from the experiment knobs: dimension, effect size, cluster count,
balanced-dichotomy assignment, and per-cluster imbalance ratio.

Effect size convention: the Euclidean distance between the two group
population centroids equals ``cohens_d * covariance_scale``. This reduces to
the scalar Cohen's d for one-dimensional single-cluster groups. The optional
``d_per_dimension`` flag instead offsets every coordinate by d*sigma (distance
d*sqrt(n)*sigma), the convention behind "N(0,1) vs N(d,1)" panels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .capacity import assignment_mask, balanced_assignments
from .data import Dataset
from .rng import TAG_LAYOUT, TAG_SAMPLE, derive_seed, make_rng

WEIGHT_SUM_TOL = 1e-9


@dataclass(frozen=True)
class ClusterSpec:
    """One Gaussian data source inside a group."""

    centroid: np.ndarray
    covariance_scale: float
    weight: float
    group: int

    def __post_init__(self) -> None:
        centroid = np.asarray(self.centroid, dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(centroid)):
            raise ValueError("centroid must be finite")
        if self.covariance_scale <= 0:
            raise ValueError("covariance_scale must be positive")
        if not 0.0 < self.weight <= 1.0:
            raise ValueError("weight must lie in (0, 1]")
        if self.group not in (0, 1):
            raise ValueError("group must be 0 or 1")
        centroid.setflags(write=False)
        object.__setattr__(self, "centroid", centroid)


@dataclass(frozen=True)
class ProblemSpec:
    """Generative description of a two-group experiment."""

    dimension: int
    clusters: tuple
    cohens_d: float
    n_clusters: int
    imbalance_ratio: float = 1.0
    assignment_id: int = 0

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        if self.cohens_d < 0:
            raise ValueError("cohens_d must be nonnegative")
        if not 0.0 < self.imbalance_ratio <= 1.0:
            raise ValueError("imbalance_ratio must lie in (0, 1]")
        clusters = tuple(self.clusters)
        if self.n_clusters != len(clusters):
            raise ValueError("n_clusters must equal the cluster list length")
        for cl in clusters:
            if cl.centroid.shape[0] != self.dimension:
                raise ValueError("cluster centroid dimension mismatch")
        groups = {cl.group for cl in clusters}
        if groups != {0, 1}:
            raise ValueError("each group needs at least one cluster")
        for g in (0, 1):
            total = sum(cl.weight for cl in clusters if cl.group == g)
            if abs(total - 1.0) > WEIGHT_SUM_TOL:
                raise ValueError(f"group {g} weights sum to {total}, expected 1")
        n_distinct = len(balanced_assignments(self.n_clusters))
        if not 0 <= self.assignment_id < n_distinct:
            raise ValueError(
                f"assignment_id {self.assignment_id} out of range ({n_distinct} dichotomies)")
        object.__setattr__(self, "clusters", clusters)

    def group_clusters(self, group: int) -> tuple:
        return tuple(cl for cl in self.clusters if cl.group == group)

    def group_centroid(self, group: int) -> np.ndarray:
        members = self.group_clusters(group)
        return sum(cl.weight * cl.centroid for cl in members)


def make_problem_spec(dimension: int, cohens_d: float, n_clusters: int = 2,
                      assignment_id: int = 0, imbalance_ratio: float = 1.0,
                      seed: int = 0, covariance_scale: float = 1.0,
                      cluster_spread: float = 3.0,
                      d_per_dimension: bool = False) -> ProblemSpec:
    """Build a problem from experiment knobs.

    Cluster centroids are drawn on a sphere of radius cluster_spread*sigma
    around the origin and split into groups by the assignment-id dichotomy.
    The group-1 clusters are then translated along a seeded random direction
    so the population centroid distance is exactly cohens_d*sigma, and the
    whole layout is recentred. With one cluster per group this collapses to
    centroids at +-(d*sigma/2) along the direction (the origin when d=0).
    Within a group, cluster weights follow the geometric ratio
    1 : r : r^2 : ... (r = imbalance_ratio; r=1 is balanced).
    """
    if covariance_scale <= 0:
        raise ValueError("covariance_scale must be positive")
    if cluster_spread < 0:
        raise ValueError("cluster_spread must be nonnegative")
    mask = assignment_mask(n_clusters, assignment_id)
    rng = make_rng(derive_seed(seed, TAG_LAYOUT))
    direction = _unit_vector(rng, dimension)
    base = np.empty((n_clusters, dimension))
    for i in range(n_clusters):
        base[i] = cluster_spread * covariance_scale * _unit_vector(rng, dimension)
    groups = np.array([(mask >> i) & 1 for i in range(n_clusters)], dtype=np.int64)
    weights = np.empty(n_clusters)
    for g in (0, 1):
        members = np.flatnonzero(groups == g)
        raw = imbalance_ratio ** np.arange(len(members), dtype=np.float64)
        weights[members] = raw / raw.sum()
    m0 = (weights[groups == 0, None] * base[groups == 0]).sum(axis=0)
    m1 = (weights[groups == 1, None] * base[groups == 1]).sum(axis=0)
    if d_per_dimension:
        target = cohens_d * covariance_scale * np.ones(dimension)
    else:
        target = cohens_d * covariance_scale * direction
    centroids = base.copy()
    centroids[groups == 1] += target - (m1 - m0)
    centroids -= m0 + target / 2.0
    clusters = tuple(
        ClusterSpec(centroid=centroids[i], covariance_scale=covariance_scale,
                    weight=float(weights[i]), group=int(groups[i]))
        for i in range(n_clusters))
    return ProblemSpec(dimension=dimension, clusters=clusters, cohens_d=cohens_d,
                       n_clusters=n_clusters, imbalance_ratio=imbalance_ratio,
                       assignment_id=assignment_id)


def _unit_vector(rng: np.random.Generator, dimension: int) -> np.ndarray:
    while True:
        v = rng.standard_normal(dimension)
        norm = np.linalg.norm(v)
        if norm > 1e-12:
            return v / norm


def largest_remainder_counts(weights: np.ndarray, total: int) -> np.ndarray:
    """Integer counts summing to ``total`` proportional to ``weights``.

    Floors the quotas, then hands leftover units to the largest remainders;
    ties go to the lowest index so the rounding is reproducible.
    """
    quotas = np.asarray(weights, dtype=np.float64) * total
    counts = np.floor(quotas).astype(np.int64)
    short = total - int(counts.sum())
    if short > 0:
        remainders = quotas - counts
        order = np.lexsort((np.arange(len(weights)), -remainders))
        for idx in order[:short]:
            counts[idx] += 1
    return counts


def sample_dataset(spec: ProblemSpec, n_samples: int, seed: int) -> Dataset:
    """Draw N rows: group 0 gets ceil(N/2), clusters get largest-remainder counts.

    Rows are laid out per (group, cluster) block in index order; downstream
    fold shuffling supplies any randomization of row order.
    """
    if n_samples < 4:
        raise ValueError("need at least two samples per group")
    rng = make_rng(derive_seed(seed, TAG_SAMPLE))
    group_totals = {0: math.ceil(n_samples / 2), 1: n_samples // 2}
    blocks = []
    labels = []
    for g in (0, 1):
        members = spec.group_clusters(g)
        weights = np.array([cl.weight for cl in members])
        counts = largest_remainder_counts(weights, group_totals[g])
        for cl, count in zip(members, counts):
            if count == 0:
                continue
            draw = cl.centroid + cl.covariance_scale * rng.standard_normal(
                (int(count), spec.dimension))
            blocks.append(draw)
            labels.append(np.full(int(count), g, dtype=np.int64))
    return Dataset(np.vstack(blocks), np.concatenate(labels), seed_record=seed)


def cohens_d(data: Dataset) -> float:
    """Multivariate Cohen's d: centroid distance over root-mean pooled variance.

    The pooled per-dimension variance is the usual two-sample pooled estimate
    (ddof=1 per group); its mean across dimensions is the squared scale. At
    n=1 this is exactly the textbook scalar definition.
    """
    n0, n1 = data.class_counts()
    if n0 == 0 or n1 == 0:
        raise ValueError("cohens_d needs both labels present")
    if n0 + n1 < 3:
        raise ValueError("cohens_d needs at least 3 samples for a pooled variance")
    x0 = data.features[data.labels == 0]
    x1 = data.features[data.labels == 1]
    distance = float(np.linalg.norm(x1.mean(axis=0) - x0.mean(axis=0)))
    v0 = x0.var(axis=0, ddof=1) if n0 > 1 else np.zeros(data.n_features)
    v1 = x1.var(axis=0, ddof=1) if n1 > 1 else np.zeros(data.n_features)
    pooled = ((n0 - 1) * v0 + (n1 - 1) * v1) / (n0 + n1 - 2)
    scale = math.sqrt(float(pooled.mean()))
    if scale == 0.0:
        return 0.0 if distance == 0.0 else math.inf
    return distance / scale


def theoretical_risk(spec: ProblemSpec, fit_predict, n_train: int = 20_000,
                     n_eval: int = 20_000, seed: int = 0) -> float:
    """Out-of-sample 0/1 error of the trained rule at population scale.

    Trains on a fresh n_train-sample draw and scores an independent
    n_eval-sample draw. ``fit_predict(train, features) -> labels``.
    """
    train = sample_dataset(spec, n_train, derive_seed(seed, 1))
    holdout = sample_dataset(spec, n_eval, derive_seed(seed, 2))
    predicted = np.asarray(fit_predict(train, holdout.features))
    return float(np.mean(predicted != holdout.labels))
