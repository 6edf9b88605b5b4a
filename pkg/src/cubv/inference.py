"""Permutation p-values, Monte Carlo trial requirements, and power curves.

The permutation p-value follows the counting rule p = #(permuted <= observed)
/ (M + 1) verbatim; it can be exactly zero when the observed error beats every
permutation (no +1 smoothing is applied to the numerator).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import BoundConfig, cubv_test, cubv_test_from_parts
from .data import Dataset
from .linmodel import TrainerConfig
from .rng import (TAG_OBSERVED, TAG_PERM_FOLDS, TAG_PERM_LABELS, TAG_TRIAL,
                  derive_seed, make_rng)
from .stats import upper_tail_quantile
from .synthgen import ProblemSpec, make_problem_spec, sample_dataset
from .validate import cv_error, cv_error_value, repeated_cv

DB_CAP = 40.0


@dataclass(frozen=True)
class PermutationResult:
    observed_error: float
    permuted_errors: np.ndarray
    p_value: float
    n_permutations: int


@dataclass(frozen=True)
class PowerSetting:
    n_samples: int
    cohens_d: float
    dimension: int
    n_clusters: int = 2


@dataclass(frozen=True)
class PowerCurve:
    settings: tuple
    power: tuple
    trials: int
    method_tag: str


def permutation_pvalue(data: Dataset, n_folds: int, n_permutations: int, seed: int,
                       trainer: TrainerConfig = TrainerConfig(),
                       resample_folds: bool = True) -> PermutationResult:
    """Rank the observed CV error among label-permuted reruns.

    Each permutation shuffles the labels uniformly (derived seed) and reruns
    CV with the same K; fold plans are re-derived per permutation unless
    ``resample_folds`` is off, in which case the observed plan's seed is
    reused throughout.
    """
    if n_permutations < 1:
        raise ValueError("need at least one permutation")
    observed_fold_seed = derive_seed(seed, TAG_OBSERVED)
    observed = cv_error_value(data, n_folds, observed_fold_seed, trainer)
    permuted = np.empty(n_permutations)
    for m in range(n_permutations):
        rng = make_rng(derive_seed(seed, TAG_PERM_LABELS, m))
        shuffled = Dataset(data.features, rng.permutation(data.labels),
                           data.seed_record)
        fold_seed = (derive_seed(seed, TAG_PERM_FOLDS, m)
                     if resample_folds else observed_fold_seed)
        permuted[m] = cv_error_value(shuffled, n_folds, fold_seed, trainer)
    count = int(np.sum(permuted <= observed))
    return PermutationResult(
        observed_error=observed,
        permuted_errors=permuted,
        p_value=count / (n_permutations + 1),
        n_permutations=n_permutations)


def required_mc_trials(p: float, epsilon: float, alpha: float) -> int:
    """Trials needed to pin a detection probability p within epsilon.

    ceil( Q^{-1}(alpha/2)^2 (1-p) / (epsilon^2 p) ), floored at one trial.
    """
    if not 0.0 < p <= 1.0:
        raise ValueError("p must lie in (0, 1]; p = 0 needs infinitely many trials")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    z = upper_tail_quantile(alpha / 2.0)
    return max(1, math.ceil(z * z * (1.0 - p) / (epsilon * epsilon * p)))


def ratio_db(n_trials: float, n_samples: int, cap: float = DB_CAP) -> float:
    """10 log10(M/N), capped for table emission."""
    if not math.isfinite(n_trials):
        return cap
    return min(cap, 10.0 * math.log10(n_trials / n_samples))


def power_estimate(spec: ProblemSpec, grid, trials_per_setting: int, method: str,
                   seed: int, n_folds: int = 10, n_permutations: int = 99,
                   alpha: float = 0.05,
                   bound_config: BoundConfig = BoundConfig(),
                   trainer: TrainerConfig = TrainerConfig(),
                   cluster_spread: float = 3.0,
                   d_per_dimension: bool = False,
                   bound_repeats: int = 1) -> PowerCurve:
    """Fraction of fresh-dataset trials that reject, per grid setting.

    ``spec`` supplies the template knobs (assignment, imbalance, covariance
    scale); each setting rebuilds the problem at its own (N, d, n, Nc) with a
    layout seed derived from ``seed`` and the setting index. Rejection is
    p < alpha for the permutation method and the corrected-risk rule for the
    upper-bound method; with ``bound_repeats`` > 1 the risk entering the
    bound is averaged over that many fold reshuffles.
    """
    if method not in ("kfold_perm", "cubv"):
        raise ValueError("method must be 'kfold_perm' or 'cubv'")
    settings = tuple(grid)
    if not settings:
        raise ValueError("grid must be non-empty")
    sigma = spec.clusters[0].covariance_scale
    powers = []
    for j, setting in enumerate(settings):
        setting_spec = make_problem_spec(
            dimension=setting.dimension,
            cohens_d=setting.cohens_d,
            n_clusters=setting.n_clusters,
            assignment_id=spec.assignment_id if setting.n_clusters == spec.n_clusters else 0,
            imbalance_ratio=spec.imbalance_ratio,
            seed=derive_seed(seed, j),
            covariance_scale=sigma,
            cluster_spread=cluster_spread,
            d_per_dimension=d_per_dimension)
        detections = 0
        for t in range(trials_per_setting):
            trial_seed = derive_seed(seed, TAG_TRIAL, j, t)
            dataset = sample_dataset(setting_spec, setting.n_samples, trial_seed)
            if method == "kfold_perm":
                result = permutation_pvalue(dataset, n_folds, n_permutations,
                                            derive_seed(trial_seed, 1), trainer)
                detections += int(result.p_value < alpha)
            else:
                outcome = cv_error(dataset, n_folds, derive_seed(trial_seed, 2), trainer)
                if bound_repeats > 1:
                    risks = repeated_cv(dataset, n_folds, bound_repeats,
                                        derive_seed(trial_seed, 3), trainer)
                    report = cubv_test_from_parts(float(np.mean(risks)),
                                                  dataset.n_samples,
                                                  outcome.model_full, bound_config)
                else:
                    report = cubv_test(outcome, bound_config)
                detections += int(report.detect)
        powers.append(detections / trials_per_setting)
    return PowerCurve(settings=settings, power=tuple(powers),
                      trials=trials_per_setting, method_tag=method)


def write_power_csv(curves, path: str) -> None:
    """CSV with header ``N,d,n,Nc,method,trials,power``."""
    lines = ["N,d,n,Nc,method,trials,power"]
    for curve in curves:
        for setting, power in zip(curve.settings, curve.power):
            lines.append(
                f"{setting.n_samples},{format(setting.cohens_d, '.17g')},"
                f"{setting.dimension},{setting.n_clusters},{curve.method_tag},"
                f"{curve.trials},{format(power, '.17g')}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_mc_csv(rows, path: str) -> None:
    """CSV with header ``N,d,p_hat,required_M,ratio_db``.

    Rows are (N, d, p_hat) tuples; a zero detection estimate has no finite
    trial requirement, so required_M is left blank and the dB column sits at
    the cap.
    """
    lines = ["N,d,p_hat,required_M,ratio_db"]
    for n, d, p_hat in rows:
        if p_hat > 0.0:
            m = required_mc_trials(p_hat, 0.1, 0.05)
            db = ratio_db(m, n)
            m_text = str(m)
        else:
            db = DB_CAP
            m_text = ""
        lines.append(
            f"{n},{format(d, '.17g')},{format(p_hat, '.17g')},{m_text},"
            f"{format(db, '.17g')}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
