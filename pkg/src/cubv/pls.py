"""Partial least squares features: univariate-response NIPALS with X deflation.

With a single response the NIPALS inner loop closes after one pass, so each
component is w_h = X_h' y / ||X_h' y||, t_h = X_h w_h, followed by rank-one
deflation of X. Scores of successive components are mutually orthogonal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PlsModel:
    n_components: int
    x_weights: np.ndarray
    x_loadings: np.ndarray
    y_loadings: np.ndarray
    x_means: np.ndarray
    y_mean: float


def pls_fit(features: np.ndarray, labels: np.ndarray, n_components: int) -> PlsModel:
    X = np.array(features, dtype=np.float64)
    y = np.asarray(labels, dtype=np.float64).reshape(-1)
    n, m = X.shape
    if y.shape[0] != n:
        raise ValueError("labels length must match feature rows")
    if not 1 <= n_components <= min(n - 1, m):
        raise ValueError(
            f"n_components must lie in [1, min(N-1, m)] = [1, {min(n - 1, m)}]")
    x_means = X.mean(axis=0)
    y_mean = float(y.mean())
    Xc = X - x_means
    yc = y - y_mean
    if float(yc @ yc) == 0.0:
        raise ValueError("response has zero variance after centering (single class?)")
    weights = np.empty((m, n_components))
    loadings = np.empty((m, n_components))
    y_loadings = np.empty(n_components)
    for h in range(n_components):
        w = Xc.T @ yc
        w_norm = float(np.linalg.norm(w))
        if w_norm < 1e-12:
            raise ValueError(f"component {h + 1}: residual covariance vanished")
        w /= w_norm
        t = Xc @ w
        tt = float(t @ t)
        if tt < 1e-24:
            raise ValueError(f"component {h + 1}: degenerate score vector")
        p = Xc.T @ t / tt
        weights[:, h] = w
        loadings[:, h] = p
        y_loadings[h] = float(t @ yc) / tt
        Xc = Xc - np.outer(t, p)
    return PlsModel(n_components=n_components, x_weights=weights,
                    x_loadings=loadings, y_loadings=y_loadings,
                    x_means=x_means, y_mean=y_mean)


def pls_transform(model: PlsModel, features: np.ndarray) -> np.ndarray:
    """Project rows onto the successive weight directions with deflation."""
    X = np.asarray(features, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.x_means.shape[0]:
        raise ValueError("feature dimension does not match the fitted model")
    Xc = X - model.x_means
    scores = np.empty((X.shape[0], model.n_components))
    for h in range(model.n_components):
        t = Xc @ model.x_weights[:, h]
        scores[:, h] = t
        Xc = Xc - np.outer(t, model.x_loadings[:, h])
    return scores
