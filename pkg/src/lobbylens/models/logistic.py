"""Regularized logistic regression on sparse feature vectors.

The training objective is

    mean_i log(1 + exp(-s_i (x_i . w + b))) + penalty(w) / (C n)

with s in {-1, +1}, penalty(w) = ||w||_2^2 / 2 for L2 and ||w||_1 for L1,
and an unpenalized bias.  L2 is minimized with a quasi-Newton method
(L-BFGS-B with the function-decrease stop disabled, so the max-magnitude
gradient tolerance is the binding criterion); L1 uses cyclic coordinate
descent with per-coordinate Newton steps and soft-thresholding, which
produces exact zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.optimize
import scipy.sparse as sp
from scipy.special import expit

from ..features import SparseVector, stack_vectors

DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITER = 1000

_H_FLOOR = 1e-12  # curvature floor for coordinate Newton steps
_MAX_BIAS_STEP = 10.0


@dataclass(frozen=True)
class LogisticModel:
    """Fitted weights plus the training contract they were produced under."""

    weights: np.ndarray
    bias: float
    penalty: str
    C: float
    trained_on: str | None = None
    converged: bool = True
    n_iter: int = 0
    objective_history: tuple[float, ...] = ()

    @property
    def dimension(self) -> int:
        return int(self.weights.size)

    @property
    def n_nonzero_weights(self) -> int:
        return int(np.count_nonzero(self.weights))

    def decision_function(self, x: SparseVector) -> float:
        if x.dimension != self.dimension:
            raise ValueError(
                f"feature dimension {x.dimension} does not match model "
                f"dimension {self.dimension}"
            )
        return float(np.dot(self.weights[x.indices], x.values) + self.bias)

    def predict_proba(self, x: SparseVector) -> float:
        return float(expit(self.decision_function(x)))


def _as_csr(X: Sequence[SparseVector] | sp.spmatrix) -> sp.csr_matrix:
    if sp.issparse(X):
        return X.tocsr()
    return stack_vectors(X)


def _check_training_inputs(X: sp.csr_matrix, y: np.ndarray) -> None:
    if X.shape[0] != y.size:
        raise ValueError(f"got {X.shape[0]} feature rows but {y.size} labels")
    if X.shape[0] < 2:
        raise ValueError("need at least 2 training examples")
    classes = np.unique(y)
    if not np.all(np.isin(classes, (0, 1))):
        raise ValueError(f"labels must be 0/1, got {classes}")
    if classes.size < 2:
        raise ValueError("training data contains a single class")


def logistic_objective(
    params: np.ndarray,
    X: sp.spmatrix,
    y: np.ndarray,
    C: float,
    penalty: str = "l2",
) -> tuple[float, np.ndarray]:
    """Objective value and gradient at ``params`` = [weights..., bias].

    For the L1 penalty the returned gradient covers only the smooth part
    (mean log-loss); the penalty term still contributes to the value.
    """
    w = params[:-1]
    b = params[-1]
    n = y.size
    z = X @ w + b
    # log(1 + e^z) - y z, evaluated via logaddexp for large |z|
    loss = float(np.mean(np.logaddexp(0.0, z) - y * z))
    residual = (expit(z) - y) / n
    grad_w = X.T @ residual
    grad_b = float(residual.sum())
    lam = 1.0 / (C * n)
    if penalty == "l2":
        loss += 0.5 * lam * float(np.dot(w, w))
        grad_w = grad_w + lam * w
    elif penalty == "l1":
        loss += lam * float(np.abs(w).sum())
    else:
        raise ValueError(f"unknown penalty {penalty!r}")
    return loss, np.concatenate([grad_w, [grad_b]])


def _train_l2(
    X: sp.csr_matrix, y: np.ndarray, C: float, tol: float, max_iter: int
) -> tuple[np.ndarray, float, bool, int, list[float]]:
    m = X.shape[1]
    x0 = np.zeros(m + 1)
    history = [logistic_objective(x0, X, y, C, "l2")[0]]

    def record(xk: np.ndarray) -> None:
        history.append(logistic_objective(xk, X, y, C, "l2")[0])

    result = scipy.optimize.minimize(
        logistic_objective,
        x0,
        args=(X, y, C, "l2"),
        jac=True,
        method="L-BFGS-B",
        callback=record,
        options={
            "maxiter": max_iter,
            "maxfun": max(20 * max_iter, 15000),
            "ftol": 0.0,
            "gtol": tol,
            "maxls": 50,
        },
    )
    params = result.x
    _, grad = logistic_objective(params, X, y, C, "l2")
    converged = bool(np.max(np.abs(grad)) <= tol)
    return params[:-1], float(params[-1]), converged, int(result.nit), history


def _l1_min_subgradient(grad_w: np.ndarray, w: np.ndarray, lam: float) -> np.ndarray:
    # Minimum-norm subgradient of the L1 objective: the natural extension of
    # "gradient magnitude" to the non-smooth penalty.
    at_zero = np.sign(grad_w) * np.maximum(np.abs(grad_w) - lam, 0.0)
    active = grad_w + lam * np.sign(w)
    return np.where(w != 0.0, active, at_zero)


def _train_l1(
    X: sp.csr_matrix, y: np.ndarray, C: float, tol: float, max_iter: int
) -> tuple[np.ndarray, float, bool, int, list[float]]:
    n, m = X.shape
    Xc = X.tocsc()
    indptr, rows, data = Xc.indptr, Xc.indices, Xc.data
    w = np.zeros(m)
    b = 0.0
    z = np.zeros(n)
    lam = 1.0 / (C * n)

    def objective() -> float:
        return float(
            np.mean(np.logaddexp(0.0, z) - y * z) + lam * np.abs(w).sum()
        )

    history = [objective()]
    converged = False
    epoch = 0
    for epoch in range(1, max_iter + 1):
        for j in range(m):
            lo, hi = indptr[j], indptr[j + 1]
            if lo == hi:
                continue
            r = rows[lo:hi]
            xv = data[lo:hi]
            p = expit(z[r])
            g = float(np.dot(xv, p - y[r])) / n
            h = float(np.dot(xv * xv, p * (1.0 - p))) / n + _H_FLOOR
            u = h * w[j] - g
            new_wj = np.sign(u) * max(abs(u) - lam, 0.0) / h
            delta = new_wj - w[j]
            if delta != 0.0:
                w[j] = new_wj
                z[r] += delta * xv
        p = expit(z)
        g_b = float(np.mean(p - y))
        h_b = float(np.mean(p * (1.0 - p))) + _H_FLOOR
        step = np.clip(-g_b / h_b, -_MAX_BIAS_STEP, _MAX_BIAS_STEP)
        if step != 0.0:
            b += step
            z += step

        history.append(objective())
        p = expit(z)
        residual = (p - y) / n
        grad_w = Xc.T @ residual
        sub = _l1_min_subgradient(grad_w, w, lam)
        if max(float(np.max(np.abs(sub), initial=0.0)), abs(float(residual.sum()))) <= tol:
            converged = True
            break
    return w, b, converged, epoch, history


def train_logistic(
    X: Sequence[SparseVector] | sp.spmatrix,
    y: Sequence[int] | np.ndarray,
    penalty: str = "l2",
    C: float = 1.0,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    trained_on: str | None = None,
) -> LogisticModel:
    """Fit the regularized model; both classes must be present.

    Stops when the maximum-magnitude gradient component (minimum-norm
    subgradient under L1) is at most ``tol``; otherwise runs ``max_iter``
    iterations and returns with ``converged=False``.
    """
    if penalty not in ("l1", "l2"):
        raise ValueError(f"penalty must be 'l1' or 'l2', got {penalty!r}")
    if C <= 0 or tol <= 0 or max_iter < 1:
        raise ValueError("C and tol must be positive and max_iter >= 1")
    X = _as_csr(X)
    y = np.asarray(y, dtype=np.float64)
    _check_training_inputs(X, y)
    if penalty == "l2":
        w, b, converged, n_iter, history = _train_l2(X, y, C, tol, max_iter)
    else:
        w, b, converged, n_iter, history = _train_l1(X, y, C, tol, max_iter)
    return LogisticModel(
        weights=w,
        bias=b,
        penalty=penalty,
        C=C,
        trained_on=trained_on,
        converged=converged,
        n_iter=n_iter,
        objective_history=tuple(history),
    )
