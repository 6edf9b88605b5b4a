"""Deterministic linear classifier training, risk evaluation, and scaling.

Training minimizes the L2-regularized hinge loss with an unregularized bias.
The solver is pairwise coordinate descent on the dual with a fixed,
input-determined selection order (no shuffling), so identical inputs yield
bit-identical models. Convergence is certified by the primal-dual gap; the
recorded objective trace is the best primal value seen at each checkpoint and
is therefore non-increasing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import _svm_core
from .data import Dataset

STD_FLOOR = 1e-12


@dataclass(frozen=True)
class TrainerConfig:
    """Knobs shared by every training site (folds, full-sample, feasibility)."""

    reg_c: float = 1.0
    tol: float = 1e-8
    max_iter: int = 2_000_000
    standardize: bool = True

    def __post_init__(self) -> None:
        if self.reg_c <= 0:
            raise ValueError("reg_c must be positive")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")


@dataclass(frozen=True)
class LinearModel:
    omega: np.ndarray
    bias: float
    reg_c: float
    converged: bool
    final_objective: float
    n_iter: int = 0
    duality_gap: float = 0.0
    objective_history: tuple = ()

    def __post_init__(self) -> None:
        omega = np.asarray(self.omega, dtype=np.float64)
        omega.setflags(write=False)
        object.__setattr__(self, "omega", omega)

    @property
    def n_features(self) -> int:
        return self.omega.shape[0]

    def decision_values(self, features: np.ndarray) -> np.ndarray:
        return np.asarray(features, dtype=np.float64) @ self.omega + self.bias

    def predict(self, features: np.ndarray) -> np.ndarray:
        return (self.decision_values(features) > 0.0).astype(np.int64)


@dataclass(frozen=True)
class StandardizationParams:
    means: np.ndarray
    stds: np.ndarray

    def apply(self, features: np.ndarray) -> np.ndarray:
        return (np.asarray(features, dtype=np.float64) - self.means) / self.stds


def _check_two_classes(labels: np.ndarray) -> None:
    ones = int(np.sum(labels))
    if ones == 0 or ones == len(labels):
        raise ValueError("training requires both classes present")


def train_linear_svm_arrays(features: np.ndarray, labels: np.ndarray,
                            reg_c: float = 1.0, tol: float = 1e-8,
                            max_iter: int = 2_000_000) -> LinearModel:
    """Array-level trainer; inputs are assumed validated (hot path for CV loops)."""
    y = 2.0 * np.asarray(labels, dtype=np.float64) - 1.0
    X = np.ascontiguousarray(features, dtype=np.float64)
    w, b, obj, n_iter, converged, gap, history, n_checks = _svm_core.smo_solve(
        X, y, float(reg_c), float(tol), int(max_iter))
    return LinearModel(
        omega=w, bias=float(b), reg_c=float(reg_c), converged=bool(converged),
        final_objective=float(obj), n_iter=int(n_iter), duality_gap=float(gap),
        objective_history=tuple(history[:n_checks]))


def train_linear_svm(data: Dataset, reg_c: float = 1.0, tol: float = 1e-8,
                     max_iter: int = 2_000_000) -> LinearModel:
    """Approximate minimizer of 0.5||w||^2 + C * hinge on the +-1 relabelling."""
    if reg_c <= 0 or tol <= 0 or max_iter < 1:
        raise ValueError("reg_c, tol and max_iter must be positive")
    _check_two_classes(data.labels)
    return train_linear_svm_arrays(data.features, data.labels, reg_c, tol, max_iter)


def hinge_objective(model: LinearModel, data: Dataset) -> float:
    """The exact primal objective of ``model`` on ``data``."""
    y = 2.0 * data.labels.astype(np.float64) - 1.0
    slack = np.maximum(0.0, 1.0 - y * model.decision_values(data.features))
    return 0.5 * float(model.omega @ model.omega) + model.reg_c * float(slack.sum())


def empirical_risk(model: LinearModel, data: Dataset) -> float:
    """Misclassified fraction; exactly a multiple of 1/N."""
    if model.n_features != data.n_features:
        raise ValueError(
            f"model has {model.n_features} features, data has {data.n_features}")
    wrong = int(np.sum(model.predict(data.features) != data.labels))
    return wrong / data.n_samples


def fit_standardization(features: np.ndarray) -> StandardizationParams:
    X = np.ascontiguousarray(features, dtype=np.float64)
    _, means, stds = _svm_core.standardize_columns(X, STD_FLOOR)
    return StandardizationParams(means=means, stds=stds)


def standardize(data: Dataset) -> tuple[Dataset, StandardizationParams]:
    """Zero-mean unit-variance columns (population std, floored at 1e-12)."""
    params = fit_standardization(data.features)
    return Dataset(params.apply(data.features), data.labels, data.seed_record), params


def model_to_json(model: LinearModel) -> str:
    payload = {
        "omega": [float(v) for v in model.omega],
        "bias": float(model.bias),
        "reg_c": float(model.reg_c),
        "converged": bool(model.converged),
    }
    return json.dumps(payload)


def model_from_json(text: str) -> LinearModel:
    payload = json.loads(text)
    return LinearModel(
        omega=np.array(payload["omega"], dtype=np.float64),
        bias=float(payload["bias"]),
        reg_c=float(payload["reg_c"]),
        converged=bool(payload["converged"]),
        final_objective=0.0)
