#!/usr/bin/env python3
"""Nested-CV versus naive proportion intervals: widths and reference-risk coverage."""

import argparse

import numpy as np

from cubv.linmodel import TrainerConfig, train_linear_svm_arrays
from cubv.rng import derive_seed
from cubv.synthgen import make_problem_spec, sample_dataset, theoretical_risk
from cubv.validate import cv_error, nested_cv_interval, proportion_ci


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--n-seeds", type=int, default=100)
    ap.add_argument("--n-samples", type=int, default=100)
    ap.add_argument("--cohens-d", type=float, default=1.0)
    ap.add_argument("--k-folds", type=int, default=10)
    ap.add_argument("--repeats", type=int, default=20)
    args = ap.parse_args()

    spec = make_problem_spec(dimension=2, cohens_d=args.cohens_d, seed=args.seed)
    trainer = TrainerConfig(tol=1e-6)

    def fit_predict(train, features):
        model = train_linear_svm_arrays(train.features, train.labels, tol=1e-6)
        return model.predict(features)

    reference = theoretical_risk(spec, fit_predict, seed=derive_seed(args.seed, 99))
    print(f"reference risk (2e4-sample holdout): {reference:.4f}")

    wider = 0
    nested_cover = 0
    naive_cover = 0
    for s in range(args.n_seeds):
        data = sample_dataset(spec, args.n_samples, derive_seed(args.seed, s))
        outcome = cv_error(data, args.k_folds, derive_seed(args.seed, s, 1), trainer)
        naive = proportion_ci(outcome.cv_error, data.n_samples, 0.05)
        nested = nested_cv_interval(data, args.k_folds, args.repeats, 0.05,
                                    derive_seed(args.seed, s, 2), trainer)
        wider += int(nested.width >= naive.width)
        nested_cover += int(nested.contains(reference))
        naive_cover += int(naive.contains(reference))
    n = args.n_seeds
    print(f"nested wider than naive: {wider}/{n} = {wider / n:.2f}")
    print(f"coverage of reference risk: nested {nested_cover / n:.2f}, "
          f"naive {naive_cover / n:.2f}")


if __name__ == "__main__":
    main()
