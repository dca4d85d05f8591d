"""Regularized SPD solve ``(K + N*gamma*I) alpha = b``."""

import numpy as np
from scipy.linalg import lapack


class FactorizationError(np.linalg.LinAlgError):
    def __init__(self, minor):
        self.minor = minor
        super().__init__(
            f"Cholesky factorization failed: leading minor of order {minor} is not "
            "positive definite (kernel matrix is not PSD within tolerance)"
        )


def regularized_matrix(K, gamma):
    K = np.asarray(K, dtype=float)
    if K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise ValueError(f"kernel matrix must be square, got shape {K.shape}")
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    n = K.shape[0]
    return K + (n * gamma) * np.eye(n)


def factor_regularized(K, gamma):
    """Lower Cholesky factor of ``K + N*gamma*I``."""
    return _cholesky(regularized_matrix(K, gamma))


def _cholesky(A):
    c, info = lapack.dpotrf(A, lower=1, clean=1, overwrite_a=0)
    if info > 0:
        raise FactorizationError(info)
    if info < 0:
        raise ValueError(f"dpotrf: illegal argument {-info}")
    return c


def solve_factored(c, b):
    b = np.asarray(b, dtype=float)
    if b.shape[0] != c.shape[0]:
        raise ValueError(f"target length {b.shape[0]} does not match system size {c.shape[0]}")
    x, info = lapack.dpotrs(c, b, lower=1)
    if info != 0:
        raise ValueError(f"dpotrs: illegal argument {-info}")
    return x


def solve_regularized(K, b, gamma, refine=2):
    """Solve ``(K + N*gamma*I) alpha = b`` by Cholesky.

    ``b`` may be a vector or an N x m block of right-hand sides that share the
    factorization. ``refine`` steps of iterative refinement reuse the factor
    with residuals accumulated in long double, which keeps the forward error
    near machine precision even when N*gamma is small.
    """
    A = regularized_matrix(K, gamma)
    b = np.asarray(b, dtype=float)
    if b.shape[0] != A.shape[0]:
        raise ValueError(f"target length {b.shape[0]} does not match kernel size {A.shape[0]}")
    c = _cholesky(A)
    x = solve_factored(c, b)
    if refine:
        A_ext = A.astype(np.longdouble)
        b_ext = b.astype(np.longdouble)
        for _ in range(refine):
            r = (b_ext - A_ext @ x.astype(np.longdouble)).astype(float)
            x = x + solve_factored(c, r)
    return x


def residual_norm(K, b, gamma, alpha):
    n = K.shape[0]
    return float(np.linalg.norm(K @ alpha + n * gamma * alpha - b))
