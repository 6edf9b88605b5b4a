"""End-to-end experimental scenarios, ingestion, and result emission.

Four scenarios mirror the study designs: ``null`` (no effect, false-positive
rates), ``multisample`` (fresh datasets per realization), ``single_sample``
(one dataset, fold reshuffles plus permutation inference), and ``mri``
(feature-table problems over PLS dimensions and subsample sizes). Every
record carries the derived seed that regenerates it, and emission is
byte-deterministic for a given config.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from . import __version__
from .bounds import BoundConfig, cubv_test, cubv_test_from_parts
from .data import Dataset
from .linmodel import TrainerConfig
from .pls import pls_fit, pls_transform
from .rng import TAG_SAMPLE, TAG_SUBSAMPLE, TAG_TRIAL, derive_seed, make_rng
from .synthgen import cohens_d, make_problem_spec, sample_dataset
from .validate import cv_error, repeated_cv, write_cv_distribution_csv
from .inference import (PowerCurve, PowerSetting, permutation_pvalue, ratio_db,
                        required_mc_trials, write_mc_csv, write_power_csv)

SCENARIOS = ("null", "multisample", "single_sample", "mri")

MRI_PROBLEMS = {
    "P1": {"HC": 0, "MCI": 0, "cMCI": 1, "AD": 1},
    "P2": {"HC": 0, "cMCI": 0, "MCI": 1, "AD": 1},
    "P3": {"HC": 0, "AD": 0, "MCI": 1, "cMCI": 1},
}
MRI_DIAGNOSES = ("HC", "MCI", "cMCI", "AD")


class ConfigError(ValueError):
    """Invalid experiment configuration; lists the offending fields."""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("invalid configuration: " + "; ".join(self.problems))


class IngestionError(ValueError):
    """Feature-table ingestion failure with row/column context."""


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: str = "null"
    sample_sizes: tuple = (50, 100, 200)
    dimensions: tuple = (2,)
    effect_sizes: tuple = (0.0,)
    n_clusters: int = 2
    imbalance_ratio: float = 1.0
    assignment_id: int = 0
    k_folds: int = 10
    fold_repeats: int = 100
    n_realizations: int = 100
    trials: int = 200
    alpha: float = 0.05
    eta: float = 0.5
    dropout_delta: float = 0.5
    mc_epsilon: float = 0.1
    pls_dims: tuple = tuple(range(1, 21))
    subsample_sizes: tuple = (40, 80, 160, 240, 320, 400)
    mri_table: str = ""
    master_seed: int = 0
    output_dir: str = "out"
    threads: int = 1
    cluster_spread: float = 3.0
    covariance_scale: float = 1.0
    d_per_dimension: bool = False
    resample_folds: bool = True
    reg_c: float = 1.0
    svm_tol: float = 1e-6
    svm_max_iter: int = 2_000_000
    standardize: bool = True

    def trainer(self) -> TrainerConfig:
        return TrainerConfig(reg_c=self.reg_c, tol=self.svm_tol,
                             max_iter=self.svm_max_iter,
                             standardize=self.standardize)

    def bound_config(self) -> BoundConfig:
        return BoundConfig(eta=self.eta, dropout_delta=self.dropout_delta)


def validate_config(config: ExperimentConfig) -> None:
    problems = []
    if config.scenario not in SCENARIOS:
        problems.append(f"scenario must be one of {SCENARIOS}, got {config.scenario!r}")
    if not config.sample_sizes or any(n < 4 for n in config.sample_sizes):
        problems.append("sample_sizes must be non-empty with every N >= 4")
    if not config.dimensions or any(n < 1 for n in config.dimensions):
        problems.append("dimensions must be non-empty and positive")
    if any(d < 0 for d in config.effect_sizes) or not config.effect_sizes:
        problems.append("effect_sizes must be non-empty and nonnegative")
    if config.n_clusters < 2 or config.n_clusters % 2:
        problems.append("n_clusters must be even and at least 2")
    if not 0 < config.imbalance_ratio <= 1:
        problems.append("imbalance_ratio must lie in (0, 1]")
    if config.k_folds < 2:
        problems.append("k_folds must be at least 2")
    if config.fold_repeats < 1:
        problems.append("fold_repeats must be positive")
    if config.n_realizations < 1:
        problems.append("n_realizations must be positive")
    if config.trials < 1:
        problems.append("trials must be positive")
    if not 0 < config.alpha < 1:
        problems.append("alpha must lie in (0, 1)")
    if not 0 < config.eta < 1:
        problems.append("eta must lie in (0, 1)")
    if not 0 <= config.dropout_delta <= 1:
        problems.append("dropout_delta must lie in [0, 1]")
    if config.mc_epsilon <= 0:
        problems.append("mc_epsilon must be positive")
    if config.scenario == "mri":
        if not config.pls_dims or any(k < 1 for k in config.pls_dims):
            problems.append("pls_dims must be non-empty and positive")
        if not config.subsample_sizes or any(n < 4 for n in config.subsample_sizes):
            problems.append("subsample_sizes must be non-empty with every N >= 4")
    if config.threads < 1:
        problems.append("threads must be positive")
    if config.reg_c <= 0:
        problems.append("reg_c must be positive")
    if config.svm_tol <= 0:
        problems.append("svm_tol must be positive")
    if config.svm_max_iter < 1:
        problems.append("svm_max_iter must be positive")
    if problems:
        raise ConfigError(problems)


@dataclass
class ResultBundle:
    config: dict
    version: str
    records: dict = field(default_factory=dict)
    wall_time_seconds: float = 0.0


def _map_ordered(fn, items, threads: int):
    """Apply fn to items, optionally on a thread pool; results in input order."""
    if threads <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _grid(config: ExperimentConfig):
    grid = []
    for n_dim in config.dimensions:
        for n_samples in config.sample_sizes:
            for d in config.effect_sizes:
                grid.append((n_samples, float(d), n_dim))
    return grid


def _setting_spec(config: ExperimentConfig, index: int, d: float, n_dim: int):
    return make_problem_spec(
        dimension=n_dim, cohens_d=d, n_clusters=config.n_clusters,
        assignment_id=config.assignment_id,
        imbalance_ratio=config.imbalance_ratio,
        seed=derive_seed(config.master_seed, index),
        covariance_scale=config.covariance_scale,
        cluster_spread=config.cluster_spread,
        d_per_dimension=config.d_per_dimension)


def run_scenario(config: ExperimentConfig) -> ResultBundle:
    validate_config(config)
    start = time.perf_counter()
    runner = {
        "null": _run_null,
        "multisample": _run_multisample,
        "single_sample": _run_single_sample,
        "mri": _run_mri,
    }[config.scenario]
    records = runner(config)
    bundle = ResultBundle(config=asdict(config), version=__version__, records=records)
    bundle.wall_time_seconds = time.perf_counter() - start
    return bundle


def _run_null(config: ExperimentConfig) -> dict:
    trainer = config.trainer()
    bound_cfg = config.bound_config()
    power_rows = []
    mc_rows = []
    bound_reports = []
    for j, (n_samples, _d, n_dim) in enumerate(_grid(config)):
        spec = _setting_spec(config, j, 0.0, n_dim)

        def one_trial(t, spec=spec, j=j, n_samples=n_samples):
            trial_seed = derive_seed(config.master_seed, TAG_TRIAL, j, t)
            dataset = sample_dataset(spec, n_samples, trial_seed)
            outcome = cv_error(dataset, config.k_folds, derive_seed(trial_seed, 2),
                               trainer)
            # the bound sees the fold-repetition mean, not one fold draw
            risks = repeated_cv(dataset, config.k_folds, config.fold_repeats,
                                derive_seed(trial_seed, 3), trainer)
            report = cubv_test_from_parts(float(np.mean(risks)),
                                          dataset.n_samples,
                                          outcome.model_full, bound_cfg)
            perm = permutation_pvalue(dataset, config.k_folds,
                                      config.n_realizations,
                                      derive_seed(trial_seed, 1), trainer,
                                      config.resample_folds)
            return trial_seed, report, perm.p_value

        results = _map_ordered(one_trial, range(config.trials), config.threads)
        cubv_hits = sum(int(rep.detect) for _s, rep, _p in results)
        perm_hits = sum(int(p < config.alpha) for _s, _rep, p in results)
        for seed, report, p_value in results:
            row = report.to_json_dict()
            row.update({"seed": seed, "N": n_samples, "d": 0.0, "n": n_dim,
                        "Nc": config.n_clusters, "p_value": p_value})
            bound_reports.append(row)
        base = {"N": n_samples, "d": 0.0, "n": n_dim, "Nc": config.n_clusters,
                "trials": config.trials}
        power_rows.append({**base, "method": "cubv",
                           "power": cubv_hits / config.trials})
        power_rows.append({**base, "method": "kfold_perm",
                           "power": perm_hits / config.trials})
        mc_rows.append({"N": n_samples, "d": 0.0,
                        "p_hat": perm_hits / config.trials})
    return {"power": power_rows, "mc": mc_rows, "bound_reports": bound_reports}


def _run_multisample(config: ExperimentConfig) -> dict:
    trainer = config.trainer()
    bound_cfg = config.bound_config()
    distributions = []
    bound_reports = []
    for j, (n_samples, d, n_dim) in enumerate(_grid(config)):
        spec = _setting_spec(config, j, d, n_dim)

        def one_realization(i, spec=spec, j=j, n_samples=n_samples):
            seed = derive_seed(config.master_seed, TAG_SAMPLE, j, i)
            dataset = sample_dataset(spec, n_samples, seed)
            outcome = cv_error(dataset, config.k_folds, derive_seed(seed, 2), trainer)
            return seed, outcome.cv_error, cubv_test(outcome, bound_cfg)

        results = _map_ordered(one_realization, range(config.n_realizations),
                               config.threads)
        values = [v for _s, v, _r in results]
        distributions.append({"N": n_samples, "d": d, "n": n_dim,
                              "Nc": config.n_clusters, "setting": j,
                              "values": values,
                              "seeds": [s for s, _v, _r in results]})
        for seed, _v, report in results:
            row = report.to_json_dict()
            row.update({"seed": seed, "N": n_samples, "d": d, "n": n_dim,
                        "Nc": config.n_clusters})
            bound_reports.append(row)
    return {"cv_distributions": distributions, "bound_reports": bound_reports}


def _run_single_sample(config: ExperimentConfig) -> dict:
    trainer = config.trainer()
    bound_cfg = config.bound_config()
    distributions = []
    bound_reports = []
    permutation_rows = []
    for j, (n_samples, d, n_dim) in enumerate(_grid(config)):
        spec = _setting_spec(config, j, d, n_dim)
        seed = derive_seed(config.master_seed, TAG_SAMPLE, j)
        dataset = sample_dataset(spec, n_samples, seed)
        values = repeated_cv(dataset, config.k_folds, config.fold_repeats,
                             derive_seed(seed, 3), trainer)
        outcome = cv_error(dataset, config.k_folds, derive_seed(seed, 2), trainer)
        report = cubv_test(outcome, bound_cfg)
        perm = permutation_pvalue(dataset, config.k_folds, config.n_realizations,
                                  derive_seed(seed, 1), trainer,
                                  config.resample_folds)
        distributions.append({"N": n_samples, "d": d, "n": n_dim,
                              "Nc": config.n_clusters, "setting": j,
                              "values": [float(v) for v in values],
                              "seeds": [seed]})
        row = report.to_json_dict()
        row.update({"seed": seed, "N": n_samples, "d": d, "n": n_dim,
                    "Nc": config.n_clusters, "p_value": perm.p_value})
        bound_reports.append(row)
        permutation_rows.append({
            "N": n_samples, "d": d, "n": n_dim, "Nc": config.n_clusters,
            "seed": seed, "observed_error": perm.observed_error,
            "p_value": perm.p_value, "n_permutations": perm.n_permutations,
            "permuted_mean": float(np.mean(perm.permuted_errors))})
    return {"cv_distributions": distributions, "bound_reports": bound_reports,
            "permutations": permutation_rows}


def make_mri_fixture(path: str, seed: int = 0, effect_size: float = 1.5,
                     n_features: int = 24, rows_per_group: int = 100) -> None:
    """Synthetic 400-row stand-in for the gated feature table.

    Four pseudo-diagnosis clusters (HC, MCI, cMCI, AD); the HC+MCI versus
    cMCI+AD split carries the requested effect size, so problem P1 has signal
    by construction while P2/P3 scramble the clusters across groups.
    """
    spec = make_problem_spec(
        dimension=n_features, cohens_d=effect_size, n_clusters=4,
        assignment_id=2, imbalance_ratio=1.0, seed=derive_seed(seed, 7),
        cluster_spread=3.0)
    lines = ["diagnosis," + ",".join(f"f{j + 1}" for j in range(n_features))]
    for idx, cluster in enumerate(spec.clusters):
        rng = make_rng(derive_seed(seed, TAG_SAMPLE, idx))
        draws = cluster.centroid + cluster.covariance_scale * rng.standard_normal(
            (rows_per_group, n_features))
        for row in draws:
            lines.append(MRI_DIAGNOSES[idx] + ","
                         + ",".join(format(v, ".17g") for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def ingest_feature_table(path: str, label_column: str,
                         group_map: dict) -> tuple[Dataset, list[str]]:
    """Parse a delimited feature table into a binary-labelled dataset.

    Rows are mapped to labels through ``group_map``; every other column must
    be numeric. Returns the dataset and the feature-column manifest.
    """
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or label_column not in reader.fieldnames:
            raise IngestionError(
                f"{path}: missing label column {label_column!r} in header")
        feature_names = [c for c in reader.fieldnames if c != label_column]
        if not feature_names:
            raise IngestionError(f"{path}: no feature columns")
        labels = []
        rows = []
        bad_cells: dict[str, list[int]] = {}
        for line_no, record in enumerate(reader, start=2):
            raw_label = record[label_column]
            if raw_label not in group_map:
                raise IngestionError(
                    f"{path}: row {line_no}: unknown {label_column} value {raw_label!r}")
            labels.append(int(group_map[raw_label]))
            row = []
            for name in feature_names:
                cell = record[name]
                try:
                    value = float(cell) if cell not in (None, "") else math.nan
                except ValueError:
                    value = math.nan
                if not math.isfinite(value):
                    bad_cells.setdefault(name, []).append(line_no)
                row.append(value)
            rows.append(row)
        if bad_cells:
            report = "; ".join(
                f"{name}: rows {sorted(locs)[:5]}" for name, locs in sorted(bad_cells.items()))
            raise IngestionError(f"{path}: non-numeric or missing cells ({report})")
        if not rows:
            raise IngestionError(f"{path}: no data rows")
    labels_arr = np.array(labels, dtype=np.int64)
    if len(set(labels)) < 2:
        raise IngestionError(
            f"{path}: group_map sends every row to one label; need both classes")
    return Dataset(np.array(rows, dtype=np.float64), labels_arr), feature_names


def stratified_subsample(data: Dataset, n_samples: int, seed: int) -> Dataset:
    """Class-stratified draw without replacement (group 0 gets ceil(N/2))."""
    if n_samples > data.n_samples:
        raise ValueError("subsample larger than the dataset")
    take = {0: math.ceil(n_samples / 2), 1: n_samples // 2}
    rng = make_rng(derive_seed(seed, TAG_SUBSAMPLE))
    chosen = []
    for cls in (0, 1):
        idx = np.flatnonzero(data.labels == cls)
        if take[cls] > idx.shape[0]:
            raise ValueError(f"class {cls} too small for stratified subsample")
        chosen.append(rng.choice(idx, size=take[cls], replace=False))
    index = np.sort(np.concatenate(chosen))
    return data.subset(index)


def _run_mri(config: ExperimentConfig) -> dict:
    trainer = config.trainer()
    bound_cfg = config.bound_config()
    table = config.mri_table
    fixture_generated = False
    if not table:
        os.makedirs(config.output_dir, exist_ok=True)
        table = os.path.join(config.output_dir, "mri_fixture.csv")
        make_mri_fixture(table, seed=config.master_seed)
        fixture_generated = True
    mri_rows = []
    cohend_rows = []
    bound_reports = []
    for problem, group_map in MRI_PROBLEMS.items():
        full, _names = ingest_feature_table(table, "diagnosis", group_map)
        for k in config.pls_dims:
            pls_full = pls_fit(full.features, full.labels, k)
            scores_full = pls_transform(pls_full, full.features)
            cohend_rows.append({
                "problem": problem, "k": k,
                "cohens_d": cohens_d(Dataset(scores_full, full.labels))})
            for n_samples in config.subsample_sizes:
                seed = derive_seed(config.master_seed, hash_name(problem), k, n_samples)
                sub = (full if n_samples == full.n_samples
                       else stratified_subsample(full, n_samples, seed))
                pls_model = pls_fit(sub.features, sub.labels, k)
                scores = pls_transform(pls_model, sub.features)
                score_data = Dataset(scores, sub.labels, seed_record=seed)
                outcome = cv_error(score_data, config.k_folds,
                                   derive_seed(seed, 2), trainer)
                report = cubv_test(outcome, bound_cfg)
                perm = permutation_pvalue(score_data, config.k_folds,
                                          config.n_realizations,
                                          derive_seed(seed, 1), trainer,
                                          config.resample_folds)
                mri_rows.append({
                    "problem": problem, "k": k, "N": n_samples, "seed": seed,
                    "cv_error": outcome.cv_error,
                    "corrected_risk": report.corrected_risk,
                    "detect": report.detect,
                    "p_value": perm.p_value,
                    "permuted_mean": float(np.mean(perm.permuted_errors))})
                row = report.to_json_dict()
                row.update({"seed": seed, "problem": problem, "k": k, "N": n_samples})
                bound_reports.append(row)
    return {"mri": mri_rows, "mri_cohend": cohend_rows,
            "bound_reports": bound_reports,
            "mri_table": [{"path": table, "generated": fixture_generated}]}


def hash_name(name: str) -> int:
    """Stable small integer for a record name (never the builtin hash)."""
    digest = hashlib.sha256(name.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def _power_curves_from_rows(rows) -> list[PowerCurve]:
    by_method: dict[str, list] = {}
    for row in rows:
        by_method.setdefault(row["method"], []).append(row)
    curves = []
    for method, group in sorted(by_method.items()):
        settings = tuple(PowerSetting(r["N"], r["d"], r["n"], r["Nc"]) for r in group)
        curves.append(PowerCurve(settings=settings,
                                 power=tuple(r["power"] for r in group),
                                 trials=group[0]["trials"], method_tag=method))
    return curves


def _write_cumulative_power(rows, path: str) -> None:
    """Running normalized power sum per method, in grid order."""
    lines = ["method,N,d,n,Nc,cum_power"]
    by_method: dict[str, list] = {}
    for row in rows:
        by_method.setdefault(row["method"], []).append(row)
    for method, group in sorted(by_method.items()):
        total = len(group)
        running = 0.0
        for row in group:
            running += row["power"]
            lines.append(
                f"{method},{row['N']},{format(row['d'], '.17g')},{row['n']},"
                f"{row['Nc']},{format(running / total, '.17g')}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_permutations_csv(rows, path: str) -> None:
    lines = ["N,d,n,Nc,seed,observed_error,p_value,n_permutations,permuted_mean"]
    for r in rows:
        lines.append(
            f"{r['N']},{format(r['d'], '.17g')},{r['n']},{r['Nc']},{r['seed']},"
            f"{format(r['observed_error'], '.17g')},{format(r['p_value'], '.17g')},"
            f"{r['n_permutations']},{format(r['permuted_mean'], '.17g')}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_mri_csv(rows, path: str) -> None:
    lines = ["problem,k,N,seed,cv_error,corrected_risk,detect,p_value,permuted_mean"]
    for r in rows:
        lines.append(
            f"{r['problem']},{r['k']},{r['N']},{r['seed']},"
            f"{format(r['cv_error'], '.17g')},{format(r['corrected_risk'], '.17g')},"
            f"{int(r['detect'])},{format(r['p_value'], '.17g')},"
            f"{format(r['permuted_mean'], '.17g')}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_mri_cohend_csv(rows, path: str) -> None:
    lines = ["problem,k,cohens_d"]
    for r in rows:
        lines.append(f"{r['problem']},{r['k']},{format(r['cohens_d'], '.17g')}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def emit_results(bundle: ResultBundle, out_dir: str) -> dict:
    """Write the bundle's CSV/JSONL views plus bundle.json; return the manifest.

    Re-emitting the same bundle overwrites byte-identically: nothing volatile
    (wall time, absolute paths, timestamps) enters the emitted files; wall
    time lives in the returned manifest only.
    """
    os.makedirs(out_dir, exist_ok=True)
    written = []
    records = bundle.records

    if records.get("power"):
        path = os.path.join(out_dir, "power.csv")
        write_power_csv(_power_curves_from_rows(records["power"]), path)
        written.append(path)
        path = os.path.join(out_dir, "cumulative_power.csv")
        _write_cumulative_power(records["power"], path)
        written.append(path)
    if records.get("mc"):
        path = os.path.join(out_dir, "mc.csv")
        write_mc_csv([(r["N"], r["d"], r["p_hat"]) for r in records["mc"]], path)
        written.append(path)
    if records.get("bound_reports"):
        path = os.path.join(out_dir, "bounds.jsonl")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for row in records["bound_reports"]:
                fh.write(json.dumps(row, sort_keys=True) + "\n")
        written.append(path)
    for dist in records.get("cv_distributions", ()):
        name = (f"cv_distribution_s{dist['setting']:03d}"
                f"_N{dist['N']}_n{dist['n']}.csv")
        path = os.path.join(out_dir, name)
        write_cv_distribution_csv(dist["values"], path)
        written.append(path)
    if records.get("permutations"):
        path = os.path.join(out_dir, "permutations.csv")
        _write_permutations_csv(records["permutations"], path)
        written.append(path)
    if records.get("mri"):
        path = os.path.join(out_dir, "mri.csv")
        _write_mri_csv(records["mri"], path)
        written.append(path)
    if records.get("mri_cohend"):
        path = os.path.join(out_dir, "mri_cohend.csv")
        _write_mri_cohend_csv(records["mri_cohend"], path)
        written.append(path)

    bundle_path = os.path.join(out_dir, "bundle.json")
    payload = {"config": bundle.config, "version": bundle.version,
               "records": _jsonable(records)}
    with open(bundle_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, sort_keys=True, indent=1)
        fh.write("\n")
    written.append(bundle_path)

    manifest = {"wall_time_seconds": bundle.wall_time_seconds, "files": []}
    for path in sorted(written):
        with open(path, "rb") as fh:
            blob = fh.read()
        manifest["files"].append({
            "name": os.path.basename(path),
            "bytes": len(blob),
            "sha256": hashlib.sha256(blob).hexdigest()})
    manifest_path = os.path.join(out_dir, "manifest.json")
    with open(manifest_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=1)
        fh.write("\n")
    return manifest


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


def parse_config_file(path: str) -> dict:
    """Flat ``key = value`` config text; '#' comments; commas make tuples."""
    field_types = {f.name: f.type for f in fields(ExperimentConfig)}
    defaults = ExperimentConfig()
    values = {}
    problems = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                problems.append(f"line {line_no}: expected 'key = value'")
                continue
            key, _, text = line.partition("=")
            key = key.strip()
            text = text.strip()
            if key not in field_types:
                problems.append(f"line {line_no}: unknown key {key!r}")
                continue
            try:
                values[key] = _parse_value(text, getattr(defaults, key))
            except ValueError as exc:
                problems.append(f"line {line_no}: {key}: {exc}")
    if problems:
        raise ConfigError(problems)
    return values


def _parse_value(text: str, default):
    if isinstance(default, bool):
        low = text.lower()
        if low in ("true", "1", "yes", "on"):
            return True
        if low in ("false", "0", "no", "off"):
            return False
        raise ValueError(f"expected a boolean, got {text!r}")
    if isinstance(default, int):
        return int(text)
    if isinstance(default, float):
        return float(text)
    if isinstance(default, tuple):
        parts = [p.strip() for p in text.split(",") if p.strip()]
        if not parts:
            raise ValueError("expected a comma-separated list")
        element = default[0] if default else 0
        caster = float if isinstance(element, float) else int
        return tuple(caster(p) for p in parts)
    return text


def load_config(path: str | None = None, **overrides) -> ExperimentConfig:
    values = parse_config_file(path) if path else {}
    values.update({k: v for k, v in overrides.items() if v is not None})
    config = ExperimentConfig(**values)
    validate_config(config)
    return config
