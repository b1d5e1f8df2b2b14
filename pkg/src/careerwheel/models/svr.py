"""Epsilon-insensitive support vector regression trained by SMO working-set updates.

The dual is solved in the doubled variable space a = (alpha, alpha*) with
"signs" z = (+1...,-1...): minimize 0.5 a'Qa + p'a subject to z'a = 0 and
0 <= a <= C, where Q[p,q] = z_p z_q K(x_p, x_q) and p = (eps - y, eps + y).
Each step picks the maximal violating pair, moves it the analytically
optimal amount inside the box, and updates the gradient; the loop stops
when the pair gap falls under the tolerance.  The fitted weights are
beta = alpha - alpha*, one per training point, nonzero only on support
vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from careerwheel.models.base import (
    NumericalError,
    as_matrix,
    as_vector,
    check_features,
    default_feature_labels,
)

# The contract ceiling for the returned model is a KKT violation of 1e-3;
# training stops tighter than that so the dual objective lands within
# oracle distance with margin.
DEFAULT_TOL = 1e-5
KKT_CONTRACT = 1e-3
MAX_PASSES = 100_000

_ETA_FLOOR = 1e-12


class NotConverged(NumericalError):
    def __init__(self, violation: float):
        self.violation = violation
        super().__init__(
            f"NotConverged: no feasible dual update succeeded (violation {violation:.3e})"
        )


@dataclass(frozen=True)
class SvrParams:
    c: float = 1.0
    epsilon: float = 0.1
    kernel: str = "rbf"  # "rbf" or "linear"
    gamma: float | str = "scale"
    tol: float = DEFAULT_TOL
    max_passes: int = MAX_PASSES

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError("c must be > 0")
        if self.epsilon < 0:
            raise ValueError("epsilon must be >= 0")
        if self.kernel not in ("rbf", "linear"):
            raise ValueError(f"unknown kernel {self.kernel!r}")


def resolve_gamma(X: np.ndarray, gamma: float | str) -> float:
    """gamma="scale" resolves to 1 / (m * var) with var the whole-matrix cell variance."""
    if gamma == "scale":
        var = float(X.var())
        return 1.0 / (X.shape[1] * var) if var > 0 else 1.0
    return float(gamma)


def kernel_matrix(kind: str, gamma: float | None, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if kind == "linear":
        return A @ B.T
    sq = (
        np.sum(A * A, axis=1)[:, None]
        + np.sum(B * B, axis=1)[None, :]
        - 2.0 * (A @ B.T)
    )
    np.maximum(sq, 0.0, out=sq)
    return np.exp(-gamma * sq)


@dataclass(frozen=True)
class SvrModel:
    support_vectors: np.ndarray
    dual_weights: np.ndarray  # alpha_i - alpha_i*, nonzero entries only
    bias: float
    c: float
    epsilon: float
    kernel: str
    gamma: float | None  # realized value; None for the linear kernel
    feature_labels: tuple[str, ...]
    converged: bool = True

    def __post_init__(self):
        sv = np.asarray(self.support_vectors, dtype=np.float64).reshape(
            -1, len(self.feature_labels)
        )
        w = np.asarray(self.dual_weights, dtype=np.float64).ravel()
        if sv.shape[0] != w.size:
            raise ValueError("one dual weight per support vector required")
        object.__setattr__(self, "support_vectors", sv)
        object.__setattr__(self, "dual_weights", w)
        sv.flags.writeable = False
        w.flags.writeable = False

    def predict_one(self, x) -> float:
        x = check_features(x, len(self.feature_labels))
        return float(self.predict(x.reshape(1, -1))[0])

    def predict(self, X) -> np.ndarray:
        X = as_matrix(X)
        if X.shape[1] != len(self.feature_labels):
            check_features(X[0], len(self.feature_labels))
        if self.dual_weights.size == 0:
            return np.full(X.shape[0], self.bias)
        K = kernel_matrix(self.kernel, self.gamma, X, self.support_vectors)
        return K @ self.dual_weights + self.bias


def _bias_from_weights(
    beta: np.ndarray, residual: np.ndarray, c: float, epsilon: float
) -> float:
    """KKT-consistent bias: average over free support vectors, else interval midpoint.

    `residual` is y - K @ beta.  Free positive weights pin b = r - eps, free
    negative ones pin b = r + eps; with no free vector the feasible interval
    [max lower bound, min upper bound] is collapsed to its midpoint.
    """
    bound = c * (1.0 - 1e-9)
    free_pos = (beta > 0) & (beta < bound)
    free_neg = (beta < 0) & (beta > -bound)
    exact = np.concatenate([residual[free_pos] - epsilon, residual[free_neg] + epsilon])
    if exact.size:
        return float(exact.mean())
    lower = [residual[beta < c] - epsilon, residual[beta < 0] + epsilon]
    upper = [residual[beta > 0] - epsilon, residual[beta > -c] + epsilon]
    lo_vals = np.concatenate(lower)
    hi_vals = np.concatenate(upper)
    lo = lo_vals.max() if lo_vals.size else -np.inf
    hi = hi_vals.min() if hi_vals.size else np.inf
    if not np.isfinite(lo):
        return float(hi)
    if not np.isfinite(hi):
        return float(lo)
    return float((lo + hi) / 2.0)


def fit_svr(
    X,
    y,
    params: SvrParams | None = None,
    feature_labels: tuple[str, ...] | None = None,
) -> SvrModel:
    """Train epsilon-SVR by sequential two-variable (SMO) optimization.

    Stops when the maximal violating-pair gap drops below params.tol or
    after params.max_passes pair updates; a cap hit yields a usable model
    flagged converged=False.  NotConverged is raised only in the degenerate
    case where no feasible update ever succeeded.
    """
    if params is None:
        params = SvrParams()
    X = as_matrix(X)
    n, m = X.shape
    y = as_vector(y, n)
    if n < 2:
        raise ValueError("fit_svr needs at least 2 samples")
    if feature_labels is None:
        feature_labels = default_feature_labels(m)

    gamma = resolve_gamma(X, params.gamma) if params.kernel == "rbf" else None
    K = kernel_matrix(params.kernel, gamma, X, X)
    c, eps = params.c, params.epsilon

    # Doubled variables: indices [0, n) are alpha, [n, 2n) are alpha*.
    # Only the selection values -z*gradient are tracked; the gradient itself
    # is never needed on its own.
    a = np.zeros(2 * n)
    z = np.concatenate([np.ones(n), -np.ones(n)])
    neg_zg = np.concatenate([y - eps, y + eps])

    updates = 0
    converged = False
    gap = np.inf
    for _ in range(params.max_passes):
        up = ((z > 0) & (a < c)) | ((z < 0) & (a > 0))
        low = ((z > 0) & (a > 0)) | ((z < 0) & (a < c))
        up_vals = np.where(up, neg_zg, -np.inf)
        low_vals = np.where(low, neg_zg, np.inf)
        i = int(np.argmax(up_vals))
        j = int(np.argmin(low_vals))
        gap = up_vals[i] - low_vals[j]
        if gap <= params.tol:
            converged = True
            break

        ki, kj = i % n, j % n
        eta = max(K[ki, ki] + K[kj, kj] - 2.0 * K[ki, kj], _ETA_FLOOR)
        step = gap / eta
        # Box room along the feasible ray (a_i moves by z_i*t, a_j by -z_j*t).
        room_i = c - a[i] if z[i] > 0 else a[i]
        room_j = a[j] if z[j] > 0 else c - a[j]
        step = min(step, room_i, room_j)
        a[i] = np.clip(a[i] + z[i] * step, 0.0, c)
        a[j] = np.clip(a[j] - z[j] * step, 0.0, c)
        delta = step * (K[:, ki] - K[:, kj])
        neg_zg[:n] -= delta
        neg_zg[n:] -= delta
        updates += 1

    if not converged and updates == 0:
        raise NotConverged(float(gap))

    beta = a[:n] - a[n:]
    residual = y - K @ beta
    bias = _bias_from_weights(beta, residual, c, eps)
    keep = beta != 0.0
    return SvrModel(
        support_vectors=X[keep],
        dual_weights=beta[keep],
        bias=bias,
        c=c,
        epsilon=eps,
        kernel=params.kernel,
        gamma=gamma,
        feature_labels=tuple(feature_labels),
        converged=converged,
    )


def dual_objective(K: np.ndarray, y: np.ndarray, beta: np.ndarray, epsilon: float) -> float:
    """Value of the maximized dual W(beta) = -0.5 b'Kb - eps*|b|_1 + y'b."""
    return float(-0.5 * beta @ K @ beta - epsilon * np.abs(beta).sum() + y @ beta)


def kkt_violation(
    K: np.ndarray, y: np.ndarray, beta: np.ndarray, c: float, epsilon: float
) -> float:
    """Maximal violating-pair gap of a weight vector (<= 0 means optimal)."""
    u = y - K @ beta
    lower = np.concatenate([u[beta < c] - epsilon, u[beta < 0] + epsilon])
    upper = np.concatenate([u[beta > 0] - epsilon, u[beta > -c] + epsilon])
    lo = lower.max() if lower.size else -np.inf
    hi = upper.min() if upper.size else np.inf
    return float(lo - hi)
