"""Numba kernels for the deterministic hinge-loss linear SVM.

The primal problem is

    min_{w,b}  0.5 ||w||^2 + C * sum_i max(0, 1 - y_i (w.x_i + b)),   y_i in {-1,+1}

solved through its dual by pairwise coordinate ascent with maximal-violating-
pair selection (ties broken by lowest index), so the whole trajectory is a
pure function of the input arrays. The unregularized bias is recovered
exactly for the current w by minimizing the piecewise-linear hinge sum in b
(sorted breakpoint scan, midpoint of the optimal interval). Convergence is
certified by the primal-dual gap, which upper-bounds the distance of the
reported objective from the true minimum.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_TAU = 1e-12


@njit(cache=True)
def optimal_bias(margins_wo_b, y):
    """argmin_b sum_i max(0, 1 - y_i (m_i + b)); midpoint of the minimizing interval."""
    n = y.shape[0]
    bp = np.empty(n)
    n_pos = 0
    for i in range(n):
        bp[i] = y[i] - margins_wo_b[i]
        if y[i] > 0.0:
            n_pos += 1
    order = np.argsort(bp)
    # slope at b -> -inf is -n_pos and increases by one at every breakpoint;
    # it is zero on the interval between the n_pos-th and (n_pos+1)-th breakpoint
    if n_pos <= 0:
        return bp[order[0]] - 1.0
    if n_pos >= n:
        return bp[order[n - 1]] + 1.0
    return 0.5 * (bp[order[n_pos - 1]] + bp[order[n_pos]])


@njit(cache=True)
def hinge_objective(X, y, w, b, c_reg):
    m = X @ w
    total = 0.0
    for i in range(y.shape[0]):
        v = 1.0 - y[i] * (m[i] + b)
        if v > 0.0:
            total += v
    return 0.5 * (w @ w) + c_reg * total


@njit(cache=True)
def smo_solve(X, y, c_reg, tol, max_iter):
    """Pair coordinate ascent on the SVM dual with exact-bias primal tracking.

    Working-set selection is second order (the maximal-violating index paired
    with the largest guaranteed dual increase), ties broken by lowest index,
    so the whole trajectory is deterministic. Returns (w, b, objective,
    n_iter, converged, gap, history, n_checks): ``history[:n_checks]`` is the
    best-so-far primal objective at successive checkpoints (non-increasing by
    construction) and ``gap`` is the final primal-dual gap, an upper bound on
    the reported objective's suboptimality.
    """
    n_rows, n_dim = X.shape
    alpha = np.zeros(n_rows)
    w = np.zeros(n_dim)
    grad = -np.ones(n_rows)
    k_diag = np.empty(n_rows)
    for t in range(n_rows):
        acc = 0.0
        for k in range(n_dim):
            acc += X[t, k] * X[t, k]
        k_diag[t] = acc
    check_every = n_rows if n_rows > 64 else 64
    max_checks = max_iter // check_every + 8
    history = np.empty(max_checks)
    n_checks = 0
    best_obj = np.inf
    best_w = w.copy()
    best_b = 0.0
    gap = np.inf
    converged = False
    it = 0
    k_i = np.empty(n_rows)
    while True:
        do_check = it % check_every == 0 or it >= max_iter
        # first index: maximal violation over I_up
        g_max = -np.inf
        g_min = np.inf
        i_sel = -1
        for t in range(n_rows):
            yt = y[t]
            at = alpha[t]
            v = -yt * grad[t]
            if (yt > 0.0 and at < c_reg) or (yt < 0.0 and at > 0.0):
                if v > g_max:
                    g_max = v
                    i_sel = t
            if (yt > 0.0 and at > 0.0) or (yt < 0.0 and at < c_reg):
                if v < g_min:
                    g_min = v
        no_pair = i_sel < 0 or g_max - g_min < _TAU
        j_sel = -1
        if not no_pair:
            # second index: best second-order decrease among violators
            for t in range(n_rows):
                acc = 0.0
                for k in range(n_dim):
                    acc += X[t, k] * X[i_sel, k]
                k_i[t] = acc
            best_score = 0.0
            for t in range(n_rows):
                yt = y[t]
                at = alpha[t]
                if (yt > 0.0 and at > 0.0) or (yt < 0.0 and at < c_reg):
                    diff = g_max - (-yt * grad[t])
                    if diff > _TAU:
                        a_it = k_diag[i_sel] + k_diag[t] - 2.0 * k_i[t]
                        if a_it < _TAU:
                            a_it = _TAU
                        score = -(diff * diff) / a_it
                        if score < best_score:
                            best_score = score
                            j_sel = t
            if j_sel < 0:
                no_pair = True
        if do_check or no_pair or it >= max_iter:
            b = optimal_bias(X @ w, y)
            p_obj = hinge_objective(X, y, w, b, c_reg)
            if p_obj < best_obj:
                best_obj = p_obj
                best_w = w.copy()
                best_b = b
            if n_checks < max_checks:
                history[n_checks] = best_obj
                n_checks += 1
            d_obj = alpha.sum() - 0.5 * (w @ w)
            gap = best_obj - d_obj
            if gap <= tol * max(1.0, abs(best_obj)):
                converged = True
                break
            if no_pair:
                converged = True  # dual KKT-optimal; gap is rounding noise
                break
            if it >= max_iter:
                break
        i = i_sel
        j = j_sel
        yi = y[i]
        yj = y[j]
        eta = k_diag[i] + k_diag[j] - 2.0 * k_i[j]
        if eta < _TAU:
            eta = _TAU
        # move along the feasible direction d_alpha_i = +y_i s, d_alpha_j = -y_j s
        s = ((-yi * grad[i]) - (-yj * grad[j])) / eta
        if yi > 0.0:
            s_hi_i = c_reg - alpha[i]
            s_lo_i = -alpha[i]
        else:
            s_hi_i = alpha[i]
            s_lo_i = alpha[i] - c_reg
        if yj > 0.0:
            s_hi_j = alpha[j]
            s_lo_j = alpha[j] - c_reg
        else:
            s_hi_j = c_reg - alpha[j]
            s_lo_j = -alpha[j]
        s_hi = min(s_hi_i, s_hi_j)
        s_lo = max(s_lo_i, s_lo_j)
        if s > s_hi:
            s = s_hi
        elif s < s_lo:
            s = s_lo
        if s == 0.0:
            break  # unreachable for a violating pair; guards against stalls
        da_i = yi * s
        da_j = -yj * s
        alpha[i] += da_i
        alpha[j] += da_j
        for k in range(n_dim):
            w[k] += da_i * yi * X[i, k] + da_j * yj * X[j, k]
        ci = yi * da_i
        cj = yj * da_j
        for t in range(n_rows):
            dot_j = 0.0
            for k in range(n_dim):
                dot_j += X[t, k] * X[j, k]
            grad[t] += y[t] * (ci * k_i[t] + cj * dot_j)
        it += 1
    return best_w, best_b, best_obj, it, converged, gap, history, n_checks


@njit(cache=True)
def margins(X, y, w, b):
    m = X @ w
    out = np.empty(y.shape[0])
    for i in range(y.shape[0]):
        out[i] = y[i] * (m[i] + b)
    return out


@njit(cache=True)
def standardize_columns(X, floor):
    """Per-column (mean, std) with the std floored; returns (Z, means, stds)."""
    n_rows, n_dim = X.shape
    means = np.empty(n_dim)
    stds = np.empty(n_dim)
    for j in range(n_dim):
        s = 0.0
        for i in range(n_rows):
            s += X[i, j]
        mu = s / n_rows
        v = 0.0
        for i in range(n_rows):
            d = X[i, j] - mu
            v += d * d
        sd = np.sqrt(v / n_rows)
        if sd < floor:
            sd = floor
        means[j] = mu
        stds[j] = sd
    Z = np.empty_like(X)
    for i in range(n_rows):
        for j in range(n_dim):
            Z[i, j] = (X[i, j] - means[j]) / stds[j]
    return Z, means, stds


@njit(cache=True)
def fold_error_counts(X, labels, assignments, n_folds, c_reg, tol, max_iter,
                      use_standardize, std_floor):
    """Per-fold misclassification counts for K-fold CV with fold-local scaling.

    Training data for fold i is everything assigned elsewhere; the scaler is
    fit on that training part only and applied to the held-out fold.
    """
    n_rows, n_dim = X.shape
    y = np.empty(n_rows)
    for i in range(n_rows):
        y[i] = 2.0 * labels[i] - 1.0
    errors = np.zeros(n_folds, dtype=np.int64)
    sizes = np.zeros(n_folds, dtype=np.int64)
    for fold in range(n_folds):
        n_train = 0
        n_test = 0
        for i in range(n_rows):
            if assignments[i] == fold:
                n_test += 1
            else:
                n_train += 1
        Xtr = np.empty((n_train, n_dim))
        ytr = np.empty(n_train)
        Xte = np.empty((n_test, n_dim))
        yte = np.empty(n_test)
        a = 0
        b_i = 0
        for i in range(n_rows):
            if assignments[i] == fold:
                Xte[b_i] = X[i]
                yte[b_i] = y[i]
                b_i += 1
            else:
                Xtr[a] = X[i]
                ytr[a] = y[i]
                a += 1
        if use_standardize:
            Xtr, mu, sd = standardize_columns(Xtr, std_floor)
            Xte = (Xte - mu) / sd
        w, bias, _obj, _it, _conv, _gap, _hist, _nc = smo_solve(
            Xtr, ytr, c_reg, tol, max_iter)
        wrong = 0
        m = Xte @ w
        for i in range(n_test):
            pred = 1.0 if m[i] + bias > 0.0 else -1.0
            if pred != yte[i]:
                wrong += 1
        errors[fold] = wrong
        sizes[fold] = n_test
    return errors, sizes
