"""Command-line entry point.

Subcommands: simulate, validate, power, mc, shatter, mri, report. All accept
``--config`` (flat key = value file mirroring ExperimentConfig), ``--seed``,
``--out``, and ``--threads``; the CUBV_THREADS environment variable overrides
the flag. Exit codes: 0 success, 2 configuration errors, 3 ingestion errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

from . import __version__
from .bounds import cubv_test
from .capacity import (balanced_dichotomies, census_to_json,
                       classify_assignments, well_separated_hexagon)
from .data import read_dataset_csv, write_dataset_csv
from .experiments import (ConfigError, IngestionError, emit_results,
                          load_config, run_scenario, validate_config)
from .inference import PowerSetting, power_estimate, required_mc_trials, ratio_db
from .synthgen import cohens_d, make_problem_spec, sample_dataset
from .validate import (cv_error, nested_cv_interval, proportion_ci,
                       repeated_cv, write_cv_distribution_csv)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INGEST = 3


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=None, help="key = value config file")
    parser.add_argument("--seed", type=int, default=None, help="master seed")
    parser.add_argument("--out", default=None, help="output directory")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker threads (CUBV_THREADS overrides)")


def _resolve(args) -> ExperimentConfig:
    overrides = {"master_seed": args.seed, "output_dir": args.out,
                 "threads": _threads(args)}
    scenario = getattr(args, "scenario", None)
    if scenario:
        overrides["scenario"] = scenario
    return load_config(args.config, **overrides)


def _threads(args) -> int | None:
    env = os.environ.get("CUBV_THREADS")
    if env is not None:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigError([f"CUBV_THREADS must be an integer, got {env!r}"])
    return args.threads


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubv",
        description="K-fold CV with worst-case upper-bound validation")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="generate a synthetic dataset CSV")
    _common_flags(p)
    p.add_argument("--n-samples", type=int, default=100)
    p.add_argument("--dimension", type=int, default=2)
    p.add_argument("--cohens-d", type=float, default=1.0)
    p.add_argument("--n-clusters", type=int, default=2)
    p.add_argument("--assignment-id", type=int, default=0)
    p.add_argument("--imbalance-ratio", type=float, default=1.0)
    p.add_argument("--d-per-dimension", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("validate", help="cross-validate a dataset CSV")
    _common_flags(p)
    p.add_argument("--data", required=True, help="dataset CSV (label,f1,...)")
    p.add_argument("--k-folds", type=int, default=10)
    p.add_argument("--fold-repeats", type=int, default=0,
                   help="extra fold reshuffles to record (0 = none)")
    p.add_argument("--nested-repeats", type=int, default=0,
                   help="nested-CV repetitions (0 = skip the nested interval)")
    p.add_argument("--alpha", type=float, default=0.05)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("power", help="power curves on a synthetic grid")
    _common_flags(p)
    p.add_argument("--scenario", choices=("null", "multisample", "single_sample"),
                   default=None, help="run a full scenario instead of power_estimate")
    p.add_argument("--method", choices=("cubv", "kfold_perm"), default="cubv")
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("mc", help="required Monte Carlo trial counts")
    _common_flags(p)
    p.add_argument("--p-hat", type=float, required=True,
                   help="estimated detection probability")
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--n-samples", type=int, default=None,
                   help="report the M/N ratio in dB against this N")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("shatter", help="balanced dichotomy census")
    _common_flags(p)
    p.add_argument("--n-clusters", type=int, default=6)
    p.add_argument("--centroids", default=None,
                   help="CSV of centroids (label column ignored); default: "
                        "the reference hexagon for 6 clusters")
    p.set_defaults(func=cmd_shatter)

    p = sub.add_parser("mri", help="feature-table problems over PLS dimensions")
    _common_flags(p)
    p.add_argument("--data", default=None,
                   help="feature table with a 'diagnosis' column "
                        "(default: generate the synthetic fixture)")
    p.set_defaults(func=cmd_mri)

    p = sub.add_parser("report", help="run the configured scenario end to end")
    _common_flags(p)
    p.add_argument("--scenario", choices=("null", "multisample", "single_sample", "mri"),
                   default=None)
    p.set_defaults(func=cmd_report)
    return parser


def cmd_simulate(args) -> int:
    config = _resolve(args)
    spec = make_problem_spec(
        dimension=args.dimension, cohens_d=args.cohens_d,
        n_clusters=args.n_clusters, assignment_id=args.assignment_id,
        imbalance_ratio=args.imbalance_ratio, seed=config.master_seed,
        covariance_scale=config.covariance_scale,
        cluster_spread=config.cluster_spread,
        d_per_dimension=args.d_per_dimension or config.d_per_dimension)
    data = sample_dataset(spec, args.n_samples, config.master_seed)
    os.makedirs(config.output_dir, exist_ok=True)
    path = os.path.join(config.output_dir, "dataset.csv")
    write_dataset_csv(data, path)
    print(json.dumps({"path": path, "n_samples": data.n_samples,
                      "dimension": data.n_features,
                      "empirical_cohens_d": cohens_d(data)}, sort_keys=True))
    return EXIT_OK


def cmd_validate(args) -> int:
    config = _resolve(args)
    data = read_dataset_csv(args.data)
    trainer = config.trainer()
    outcome = cv_error(data, args.k_folds, config.master_seed, trainer)
    report = cubv_test(outcome, config.bound_config())
    naive = proportion_ci(outcome.cv_error, data.n_samples, args.alpha)
    result = {
        "cv_error": outcome.cv_error,
        "per_fold_errors": [float(v) for v in outcome.per_fold_errors],
        "bound_report": report.to_json_dict(),
        "naive_interval": {"lower": naive.lower, "upper": naive.upper,
                           "center": naive.center, "alpha": naive.alpha},
    }
    os.makedirs(config.output_dir, exist_ok=True)
    if args.fold_repeats > 0:
        values = repeated_cv(data, args.k_folds, args.fold_repeats,
                             config.master_seed, trainer)
        path = os.path.join(config.output_dir, "cv_distribution.csv")
        write_cv_distribution_csv(values, path)
        result["cv_distribution_csv"] = path
    if args.nested_repeats > 0:
        nested = nested_cv_interval(data, args.k_folds, args.nested_repeats,
                                    args.alpha, config.master_seed, trainer)
        result["nested_interval"] = {"lower": nested.lower, "upper": nested.upper,
                                     "center": nested.center, "alpha": nested.alpha}
    print(json.dumps(result, sort_keys=True))
    return EXIT_OK


def cmd_power(args) -> int:
    config = _resolve(args)
    if getattr(args, "scenario", None):
        bundle = run_scenario(config)
        manifest = emit_results(bundle, config.output_dir)
        print(json.dumps(manifest, sort_keys=True))
        return EXIT_OK
    template = make_problem_spec(
        dimension=config.dimensions[0], cohens_d=config.effect_sizes[0],
        n_clusters=config.n_clusters, assignment_id=config.assignment_id,
        imbalance_ratio=config.imbalance_ratio, seed=config.master_seed,
        covariance_scale=config.covariance_scale,
        cluster_spread=config.cluster_spread)
    grid = [PowerSetting(n, d, dim, config.n_clusters)
            for dim in config.dimensions
            for n in config.sample_sizes
            for d in config.effect_sizes]
    curve = power_estimate(
        template, grid, config.trials, args.method, config.master_seed,
        n_folds=config.k_folds, n_permutations=config.n_realizations,
        alpha=config.alpha, bound_config=config.bound_config(),
        trainer=config.trainer(), cluster_spread=config.cluster_spread,
        d_per_dimension=config.d_per_dimension)
    rows = [{"N": s.n_samples, "d": s.cohens_d, "n": s.dimension,
             "Nc": s.n_clusters, "power": p}
            for s, p in zip(curve.settings, curve.power)]
    print(json.dumps({"method": curve.method_tag, "trials": curve.trials,
                      "rows": rows}, sort_keys=True))
    return EXIT_OK


def cmd_mc(args) -> int:
    _resolve(args)
    trials = required_mc_trials(args.p_hat, args.epsilon, args.alpha)
    result = {"p_hat": args.p_hat, "epsilon": args.epsilon, "alpha": args.alpha,
              "required_trials": trials}
    if args.n_samples:
        result["ratio_db"] = ratio_db(trials, args.n_samples)
    print(json.dumps(result, sort_keys=True))
    return EXIT_OK


def cmd_shatter(args) -> int:
    config = _resolve(args)
    if args.centroids:
        data = read_dataset_csv(args.centroids)
        centroids = data.features
        census = classify_assignments(centroids, centroids.shape[0])
    elif args.n_clusters == 6:
        census = classify_assignments(well_separated_hexagon(), 6)
    else:
        census = balanced_dichotomies(args.n_clusters)
    os.makedirs(config.output_dir, exist_ok=True)
    path = os.path.join(config.output_dir, "census.json")
    text = census_to_json(census)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text + "\n")
    print(text)
    return EXIT_OK


def cmd_mri(args) -> int:
    config = _resolve(args)
    if args.data:
        config = replace(config, scenario="mri", mri_table=args.data)
    else:
        config = replace(config, scenario="mri")
    validate_config(config)
    bundle = run_scenario(config)
    manifest = emit_results(bundle, config.output_dir)
    print(json.dumps(manifest, sort_keys=True))
    return EXIT_OK


def cmd_report(args) -> int:
    config = _resolve(args)
    bundle = run_scenario(config)
    manifest = emit_results(bundle, config.output_dir)
    print(json.dumps(manifest, sort_keys=True))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except IngestionError as exc:
        print(f"ingestion error: {exc}", file=sys.stderr)
        return EXIT_INGEST


if __name__ == "__main__":
    sys.exit(main())
