import numpy as np
import pytest

from cubv.pls import pls_fit, pls_transform
from cubv.rng import make_rng


def test_first_weight_finds_the_informative_column():
    rng = make_rng(12)
    X = rng.normal(size=(80, 6))
    y = (X[:, 3] > 0).astype(np.int64)
    model = pls_fit(X, y, 1)
    # oracle: the centered covariance vector X_c' y_c, computed by loop
    xc = X - X.mean(axis=0)
    yc = y - y.mean()
    cov = np.array([float(np.dot(xc[:, j], yc)) for j in range(6)])
    assert int(np.argmax(np.abs(model.x_weights[:, 0]))) == 3
    assert int(np.argmax(np.abs(cov))) == 3
    np.testing.assert_allclose(
        model.x_weights[:, 0], cov / np.linalg.norm(cov), atol=1e-12)


def test_single_feature_component_is_centered_copy():
    rng = make_rng(13)
    x = rng.normal(size=(30, 1)) * 4.0
    y = (x[:, 0] > 0).astype(np.int64)
    model = pls_fit(x, y, 1)
    scores = pls_transform(model, x)
    centered = x[:, 0] - x[:, 0].mean()
    sign = np.sign(model.x_weights[0, 0])
    np.testing.assert_allclose(scores[:, 0], sign * centered, atol=1e-12)


def test_training_scores_orthogonal():
    rng = make_rng(14)
    X = rng.normal(size=(50, 8))
    y = (X[:, 0] + 0.5 * X[:, 1] + rng.normal(size=50) > 0).astype(np.int64)
    model = pls_fit(X, y, 2)
    scores = pls_transform(model, X)
    gram = scores.T @ scores
    off = abs(gram[0, 1])
    assert off <= 1e-8 * np.sqrt(gram[0, 0] * gram[1, 1])


def test_transform_matches_fit_on_training_data():
    rng = make_rng(15)
    X = rng.normal(size=(40, 5))
    y = (X @ rng.normal(size=5) > 0).astype(np.int64)
    model = pls_fit(X, y, 3)
    scores = pls_transform(model, X)
    # recompute by replaying the deflation explicitly
    xc = X - model.x_means
    for h in range(3):
        t = xc @ model.x_weights[:, h]
        np.testing.assert_allclose(scores[:, h], t, atol=1e-10)
        xc = xc - np.outer(t, model.x_loadings[:, h])


def test_component_count_limits():
    rng = make_rng(16)
    X = rng.normal(size=(10, 4))
    y = np.array([0, 1] * 5)
    with pytest.raises(ValueError):
        pls_fit(X, y, 5)
    with pytest.raises(ValueError):
        pls_fit(X, y, 0)
    pls_fit(X, y, 4)


def test_single_class_response_rejected():
    rng = make_rng(17)
    X = rng.normal(size=(10, 3))
    with pytest.raises(ValueError):
        pls_fit(X, np.ones(10, dtype=np.int64), 1)


def test_transform_dimension_check():
    rng = make_rng(18)
    X = rng.normal(size=(12, 3))
    y = (X[:, 0] > 0).astype(np.int64)
    model = pls_fit(X, y, 1)
    with pytest.raises(ValueError):
        pls_transform(model, rng.normal(size=(5, 4)))
