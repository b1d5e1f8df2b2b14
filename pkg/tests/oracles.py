"""Independent oracles the test suite checks the implementations against.

Everything here deliberately takes a different route from the library code:
ordinary least squares goes through explicit normal equations, the SVR dual
is maximized by accelerated projected gradient with an exact box-hyperplane
projection, and KKT conditions are checked point by point from their
definition rather than via the solver's violating-pair bookkeeping.
"""

from __future__ import annotations

import numpy as np


def ols_normal_equations(X: np.ndarray, y: np.ndarray) -> tuple[float, np.ndarray]:
    """Closed-form least squares: solve (A'A) w = A'y with an intercept column."""
    A = np.column_stack([np.ones(len(y)), X])
    w = np.linalg.solve(A.T @ A, A.T @ y)
    return float(w[0]), w[1:]


def project_box_hyperplane(v: np.ndarray, z: np.ndarray, c: float) -> np.ndarray:
    """Euclidean projection onto {0 <= x <= c, z @ x = 0} for z in {+1, -1}^k.

    The shifted point clip(v - lam*z, 0, c) has a z-sum that is piecewise
    linear and nonincreasing in lam, so the root is found exactly by
    scanning the kink locations and interpolating within the bracketing
    segment.
    """
    breaks = np.unique(np.concatenate([z * v, z * v - c]))
    clipped = np.clip(v[None, :] - breaks[:, None] * z[None, :], 0.0, c)
    gvals = clipped @ z
    k = int(np.searchsorted(-gvals, 0.0, side="left"))
    if k == 0:
        lam = breaks[0]
    elif k >= breaks.size:
        lam = breaks[-1]
    else:
        g0, g1 = gvals[k - 1], gvals[k]
        if g0 == g1:
            lam = breaks[k]
        else:
            lam = breaks[k - 1] + (breaks[k] - breaks[k - 1]) * g0 / (g0 - g1)
    return np.clip(v - lam * z, 0.0, c)


def svr_dual_oracle(
    K: np.ndarray,
    y: np.ndarray,
    c: float,
    epsilon: float,
    tol: float = 1e-8,
    max_iter: int = 200_000,
) -> tuple[np.ndarray, float]:
    """Maximize the epsilon-SVR dual by restarted accelerated projected gradient.

    Works on the doubled variables a = (alpha, alpha*) where the objective
    is smooth; returns (beta, W) with beta = alpha - alpha* and W the
    maximized dual value.  `tol` bounds the final projected-gradient step.
    """
    n = len(y)
    p = np.concatenate([epsilon - y, epsilon + y])
    z = np.concatenate([np.ones(n), -np.ones(n)])

    def qa(a):
        kb = K @ (a[:n] - a[n:])
        return z * np.concatenate([kb, kb])

    def f(a):
        return 0.5 * (a @ qa(a)) + p @ a

    L = 2.0 * max(float(np.linalg.eigvalsh(K)[-1]), 1e-12)
    a = np.zeros(2 * n)
    v = a.copy()
    t = 1.0
    f_prev = f(a)
    for it in range(max_iter):
        a_new = project_box_hyperplane(v - (qa(v) + p) / L, z, c)
        t_new = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t * t))
        v = a_new + ((t - 1.0) / t_new) * (a_new - a)
        f_new = f(a_new)
        if f_new > f_prev:  # adaptive restart
            v = a_new.copy()
            t_new = 1.0
        a, t, f_prev = a_new, t_new, f_new
        if it % 10 == 0:
            step = a - project_box_hyperplane(a - (qa(a) + p) / L, z, c)
            if np.max(np.abs(step)) <= tol:
                break
    return a[:n] - a[n:], -f(a)


def full_dual_weights(model, X: np.ndarray) -> np.ndarray:
    """Expand a model's support-vector weights to one weight per training row."""
    beta = np.zeros(X.shape[0])
    used = np.zeros(model.support_vectors.shape[0], dtype=bool)
    for s, sv in enumerate(model.support_vectors):
        for i in range(X.shape[0]):
            if beta[i] == 0.0 and not used[s] and np.array_equal(X[i], sv):
                beta[i] = model.dual_weights[s]
                used[s] = True
                break
    assert used.all(), "support vector not found among training rows"
    return beta


def svr_pointwise_kkt(
    K: np.ndarray,
    y: np.ndarray,
    beta: np.ndarray,
    bias: float,
    c: float,
    epsilon: float,
) -> float:
    """Worst per-point KKT violation, classified from the weight's position.

    Zero-weight points must sit inside the tube, free weights exactly on
    their tube edge, and bound weights on or beyond it.
    """
    r = y - (K @ beta + bias)
    band = 1e-9 * max(c, 1.0)
    worst = 0.0
    for i in range(len(y)):
        b = beta[i]
        if abs(b) <= band:
            v = max(0.0, abs(r[i]) - epsilon)
        elif b >= c - band:
            v = max(0.0, epsilon - r[i])
        elif b <= -c + band:
            v = max(0.0, r[i] + epsilon)
        elif b > 0:
            v = abs(r[i] - epsilon)
        else:
            v = abs(r[i] + epsilon)
        worst = max(worst, v)
    return worst
