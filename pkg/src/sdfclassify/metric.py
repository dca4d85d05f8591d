"""Feature weights, weighted distances, RMSD bandwidth and kernel matrices."""

import numpy as np
from scipy.spatial.distance import cdist, pdist, squareform

from .dataset import DataError


class DegenerateMetricError(ValueError):
    pass


def pearson_weights(data):
    """Correlation of each feature column with the labels.

    Columns with zero variance get weight 0.
    """
    X, y = data.features, data.labels
    n = X.shape[0]
    if n < 2:
        raise DataError(f"need at least 2 samples for correlation weights, got {n}")
    yc = y - y.mean()
    sy = np.sqrt(yc @ yc)
    if sy == 0:
        raise DataError("single-class dataset: labels have zero variance")
    Xc = X - X.mean(axis=0)
    sx = np.sqrt(np.einsum("ij,ij->j", Xc, Xc))
    num = Xc.T @ yc
    w = np.zeros(X.shape[1])
    ok = sx > 0
    w[ok] = num[ok] / (sx[ok] * sy)
    return np.clip(w, -1.0, 1.0)


def weighted_cross_distances(A, B, w):
    """Weighted Euclidean distances between rows of ``A`` and rows of ``B``."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    w = np.asarray(w, dtype=float)
    if A.ndim != 2 or B.ndim != 2 or A.shape[1] != w.shape[0] or B.shape[1] != w.shape[0]:
        raise ValueError(
            f"dimension mismatch: {A.shape} vs {B.shape} with {w.shape[0]} weights"
        )
    return cdist(A * w, B * w)


def weighted_distance_matrix(features, w):
    """Symmetric N x N weighted distance matrix with an exactly zero diagonal."""
    X = np.asarray(features, dtype=float)
    w = np.asarray(w, dtype=float)
    if X.ndim != 2 or w.ndim != 1 or X.shape[1] != w.shape[0]:
        raise ValueError(f"dimension mismatch: features {X.shape}, weights {w.shape}")
    if X.shape[0] == 1:
        return np.zeros((1, 1))
    return squareform(pdist(X * w))


def rmsd_sigma(D):
    """Gaussian width from the root mean squared pairwise distance.

    The sum over pairs i < j is normalised by 2 / (N (N + 1)).
    """
    D = np.asarray(D, dtype=float)
    n = D.shape[0]
    if n < 2:
        raise DataError(f"need at least 2 samples to estimate sigma, got {n}")
    total = np.sum(np.triu(D, 1) ** 2)
    if total == 0:
        raise DegenerateMetricError("degenerate metric: all pairwise distances are zero")
    return float(np.sqrt(2.0 * total / (n * (n + 1))))


def gaussian_from_distances(D, sigma):
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    return np.exp(-np.square(D) / (2.0 * sigma * sigma))


def gaussian_kernel(D, sigma):
    """Entrywise exp(-D^2 / 2 sigma^2), mirrored from the upper triangle."""
    D = np.asarray(D, dtype=float)
    K = gaussian_from_distances(D, sigma)
    il = np.tril_indices(D.shape[0], -1)
    K[il] = K.T[il]
    np.fill_diagonal(K, 1.0)
    return K


def linear_gram(features):
    X = np.asarray(features, dtype=float)
    K = X @ X.T
    il = np.tril_indices(K.shape[0], -1)
    K[il] = K.T[il]
    return K
