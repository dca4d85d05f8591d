"""Linear baselines: proximal SVM and Lagrangian SVM.

Both regularize the bias together with ``w`` and separate on
``w . x + bias = 0``.
"""

from dataclasses import dataclass

import numpy as np

from ..dataset import DataError


class DegenerateSeparatorError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    def __init__(self, iterations, residual):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"Lagrangian SVM did not converge in {iterations} iterations "
            f"(final max-norm step {residual:.3e})"
        )


@dataclass(frozen=True, eq=False)
class LinearSeparator:
    w: np.ndarray
    bias: float

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        if not np.any(w != 0):
            raise DegenerateSeparatorError("degenerate separator: normal vector is identically zero")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "bias", float(self.bias))

    def decision_function(self, X):
        return np.asarray(X, dtype=float) @ self.w + self.bias

    def predict(self, X):
        return np.where(self.decision_function(X) >= 0, 1.0, -1.0)

    def offset(self):
        """Height where the separator crosses ``x1 = 0`` in 2-D."""
        if self.w.shape[0] != 2:
            raise ValueError("offset is defined for 2-D separators only")
        if self.w[1] == 0:
            raise DegenerateSeparatorError("separator is vertical; it never crosses x1 = 0")
        return -self.bias / self.w[1]


def _augmented(train):
    if not train.both_classes():
        raise DataError("single-class dataset: both labels are needed for training")
    X, y = train.features, train.labels
    # rows are y_i * [x_i, 1]
    return y[:, None] * np.column_stack([X, np.ones(X.shape[0])])


def _check_nu(nu):
    if not nu > 0:
        raise ValueError(f"nu must be positive, got {nu}")
    return float(nu)


def train_psvm_linear(train, nu):
    """Minimize 1/2 (|w|^2 + bias^2) + nu/2 sum_i (1 - y_i (w . x_i + bias))^2."""
    nu = _check_nu(nu)
    H = _augmented(train)
    m = H.shape[1]
    z = np.linalg.solve(np.eye(m) / nu + H.T @ H, H.sum(axis=0))
    return LinearSeparator(z[:-1], z[-1])


def train_lsvm_linear(train, nu, tol=1e-10, max_iter=10_000):
    """Squared-hinge variant solved by fixed-point iteration on its dual.

    The dual is min 1/2 u'Qu - e'u over u >= 0 with Q = I/nu + HH'. Q^-1 is
    applied through Sherman-Morrison-Woodbury so only a (d+1) square system is
    factored.
    """
    nu = _check_nu(nu)
    H = _augmented(train)
    n, m = H.shape
    small = np.linalg.cholesky(np.eye(m) / nu + H.T @ H)

    def qinv(v):
        t = np.linalg.solve(small.T, np.linalg.solve(small, H.T @ v))
        return nu * (v - H @ t)

    def q(v):
        return v / nu + H @ (H.T @ v)

    step = 1.9 / nu
    e = np.ones(n)
    u = qinv(e)
    delta = np.inf
    for it in range(1, max_iter + 1):
        u_new = qinv(e + np.maximum(q(u) - e - step * u, 0.0))
        delta = np.max(np.abs(u_new - u))
        u = u_new
        if delta <= tol:
            break
    else:
        raise ConvergenceError(max_iter, delta)
    z = H.T @ u
    return LinearSeparator(z[:-1], z[-1])
