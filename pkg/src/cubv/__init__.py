"""Cross-validation with worst-case upper-bound validation (CUBV).

A K-fold CV error is combined with a PAC-Bayes dropout deviation bound; the
null hypothesis of no effect is rejected only when the corrected risk stays
at or below the worst-case level. The package also ships the surrounding
apparatus: synthetic Gaussian-mixture benchmarks, a deterministic linear SVM,
permutation inference, Monte Carlo power analysis, nested-CV intervals, and
linear-classifier capacity (VC/shattering) checks.
"""

__version__ = "0.1.0"

from .data import Dataset, read_dataset_csv, write_dataset_csv
from .synthgen import (ClusterSpec, ProblemSpec, cohens_d, make_problem_spec,
                       sample_dataset, theoretical_risk)
from .linmodel import (LinearModel, StandardizationParams, TrainerConfig,
                       empirical_risk, standardize, train_linear_svm)
from .pls import PlsModel, pls_fit, pls_transform
from .validate import (CvOutcome, FoldPlan, Interval, cv_error, loo_error,
                       nested_cv_interval, proportion_ci, repeated_cv,
                       stratified_kfold)
from .bounds import (BoundConfig, BoundReport, cubv_test, kl_linear_dropout,
                     mcdiarmid_term, pac_bayes_delta)
from .inference import (PermutationResult, PowerCurve, PowerSetting,
                        permutation_pvalue, power_estimate, required_mc_trials)
from .capacity import (DichotomyCensus, balanced_dichotomies,
                       classify_assignments, is_general_position, is_separable,
                       project_orthogonal, shatter_check, vc_verify,
                       well_separated_hexagon)
from .experiments import (ExperimentConfig, IngestionError, ConfigError,
                          ResultBundle, emit_results, ingest_feature_table,
                          make_mri_fixture, run_scenario)

__all__ = [
    "Dataset", "read_dataset_csv", "write_dataset_csv",
    "ClusterSpec", "ProblemSpec", "cohens_d", "make_problem_spec",
    "sample_dataset", "theoretical_risk",
    "LinearModel", "StandardizationParams", "TrainerConfig",
    "empirical_risk", "standardize", "train_linear_svm",
    "PlsModel", "pls_fit", "pls_transform",
    "CvOutcome", "FoldPlan", "Interval", "cv_error", "loo_error",
    "nested_cv_interval", "proportion_ci", "repeated_cv", "stratified_kfold",
    "BoundConfig", "BoundReport", "cubv_test", "kl_linear_dropout",
    "mcdiarmid_term", "pac_bayes_delta",
    "PermutationResult", "PowerCurve", "PowerSetting",
    "permutation_pvalue", "power_estimate", "required_mc_trials",
    "DichotomyCensus", "balanced_dichotomies", "classify_assignments",
    "is_general_position", "is_separable", "project_orthogonal",
    "shatter_check", "vc_verify", "well_separated_hexagon",
    "ExperimentConfig", "IngestionError", "ConfigError", "ResultBundle",
    "emit_results", "ingest_feature_table", "make_mri_fixture", "run_scenario",
]
