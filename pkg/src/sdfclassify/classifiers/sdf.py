"""Signed-distance regression classifiers and their indicator-target siblings.

All kernel models share one shape: stored training points, feature weights,
a kernel, and dual coefficients ``alpha`` from the regularized solve. The
decision value at ``x`` is ``sum_i alpha_i K(x, x_i)`` and the label is its
sign, with 0 mapped to +1.
"""

import json
import os
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import bisect

from ..dataset import DataError
from ..metric import (
    gaussian_from_distances,
    gaussian_kernel,
    linear_gram,
    pearson_weights,
    rmsd_sigma,
    weighted_cross_distances,
    weighted_distance_matrix,
)
from ..solver import solve_regularized

FORMAT_NAME = "sdfclassify-model"
FORMAT_VERSION = 1


class ContradictoryDuplicatesError(DataError):
    pass


def sign_label(values):
    return np.where(np.asarray(values) >= 0, 1.0, -1.0)


@dataclass(frozen=True, eq=False)
class GaussianFit:
    """Metric and kernel state shared by every Gaussian model on one training set."""

    weights: np.ndarray
    distances: np.ndarray
    sigma: float
    gram: np.ndarray


def prepare_gaussian(train, weights=None):
    """Steps shared by all Gaussian models: weights, distances, width, kernel.

    ``weights=None`` means correlation weights computed from ``train``.
    """
    if weights is None:
        weights = pearson_weights(train)
    weights = np.asarray(weights, dtype=float)
    D = weighted_distance_matrix(train.features, weights)
    sigma = rmsd_sigma(D)
    return GaussianFit(weights, D, sigma, gaussian_kernel(D, sigma))


def estimate_b(train, D):
    """Signed distance from each sample to its nearest opposite-class sample."""
    y = train.labels
    D = np.asarray(D, dtype=float)
    if D.shape != (y.size, y.size):
        raise ValueError(f"distance matrix {D.shape} does not match {y.size} samples")
    if not train.both_classes():
        raise DataError("single-class dataset: both labels are needed to estimate distances")
    opposite = y[:, None] != y[None, :]
    nearest = np.where(opposite, D, np.inf).min(axis=1)
    if np.any(nearest <= 0):
        i = int(np.argmax(nearest <= 0))
        raise ContradictoryDuplicatesError(
            f"contradictory duplicate samples: sample {i} coincides with a sample of the opposite class"
        )
    return y * nearest


@dataclass(frozen=True, eq=False)
class SdfModel:
    kind: str  # "gaussian" or "linear"
    target_kind: str  # "sdf" or "indicator"
    train_features: np.ndarray
    weights: np.ndarray
    alpha: np.ndarray
    gamma: float
    sigma: float = None
    method: str = "sdf"
    gram: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in ("gaussian", "linear"):
            raise ValueError(f"unknown kernel kind {self.kind!r}")
        if self.target_kind not in ("sdf", "indicator"):
            raise ValueError(f"unknown target kind {self.target_kind!r}")
        if self.alpha.shape[0] != self.train_features.shape[0]:
            raise ValueError("alpha length must equal the number of training points")
        if self.weights.shape[0] != self.train_features.shape[1]:
            raise ValueError("weights length must equal the feature dimension")
        if self.kind == "gaussian" and not (self.sigma and self.sigma > 0):
            raise ValueError("gaussian model needs a positive sigma")

    @property
    def n_features(self):
        return self.train_features.shape[1]

    def _as_queries(self, X):
        X = np.asarray(X, dtype=float)
        single = X.ndim == 1
        X = np.atleast_2d(X)
        if X.shape[1] != self.n_features:
            raise ValueError(
                f"query dimension {X.shape[1]} does not match model dimension {self.n_features}"
            )
        return X, single

    def kernel_to(self, X):
        if self.kind == "linear":
            return X @ self.train_features.T
        D = weighted_cross_distances(X, self.train_features, self.weights)
        return gaussian_from_distances(D, self.sigma)

    def decision_function(self, X):
        X, single = self._as_queries(X)
        vals = self.kernel_to(X) @ self.alpha
        return float(vals[0]) if single else vals

    def predict(self, X):
        vals = self.decision_function(X)
        return float(sign_label(vals)) if np.ndim(vals) == 0 else sign_label(vals)

    def normal_vector(self):
        """Primal normal ``sum_i alpha_i x_i`` of a linear-kernel model."""
        if self.kind != "linear":
            raise ValueError("only linear-kernel models have a primal normal vector")
        return self.train_features.T @ self.alpha


def predict(model, x):
    """Return ``(decision_value, label)`` for one point."""
    value = model.decision_function(x)
    return value, float(sign_label(value))


def _gaussian_model(train, gamma, targets, target_kind, method, fit):
    if not train.both_classes():
        raise DataError("single-class dataset: both labels are needed for training")
    fit = fit or prepare_gaussian(train)
    if targets is None:
        targets = estimate_b(train, fit.distances)
    alpha = solve_regularized(fit.gram, targets, gamma)
    return SdfModel(
        kind="gaussian",
        target_kind=target_kind,
        train_features=train.features,
        weights=fit.weights,
        alpha=alpha,
        gamma=float(gamma),
        sigma=fit.sigma,
        method=method,
        gram=fit.gram,
    )


def train_sdf(train, gamma, fit=None):
    """Gaussian-kernel regression of the estimated signed distance.

    Pass ``fit`` from :func:`prepare_gaussian` to reuse an existing kernel.
    """
    if train.n_samples < 2:
        raise DataError("need at least 2 training samples")
    return _gaussian_model(train, gamma, None, "sdf", "sdf", fit)


def train_if_regression(train, gamma, fit=None, method="if"):
    """Same pipeline as :func:`train_sdf` but regressing the +-1 labels."""
    if train.n_samples < 2:
        raise DataError("need at least 2 training samples")
    return _gaussian_model(train, gamma, train.labels, "indicator", method, fit)


def train_rbfn(train, gamma, fit=None):
    """Gaussian units at every training point, output weights by regularized least squares."""
    return train_if_regression(train, gamma, fit=fit, method="rbfn")


def train_ksvm(train, gamma, fit=None):
    """Least-squares kernel machine used in place of a hinge-loss SVM."""
    return train_if_regression(train, gamma, fit=fit, method="svm")


def train_sdf_linear(train, gamma):
    """Linear-kernel variant: raw inner products, Euclidean target distances, no bias."""
    if train.n_samples < 2:
        raise DataError("need at least 2 training samples")
    X = train.features
    D = weighted_distance_matrix(X, np.ones(X.shape[1]))
    b = estimate_b(train, D)
    alpha = solve_regularized(linear_gram(X), b, gamma)
    return SdfModel(
        kind="linear",
        target_kind="sdf",
        train_features=X,
        weights=np.ones(X.shape[1]),
        alpha=alpha,
        gamma=float(gamma),
        method="sdf_linear",
    )


def decision_offset(model, lo=-1.0, hi=1.0, xtol=1e-12):
    """Height ``t`` where the decision value along ``x1 = 0`` crosses zero (2-D models)."""
    if model.n_features != 2:
        raise ValueError("offset extraction is defined for 2-D models only")

    def f(t):
        return model.decision_function(np.array([0.0, t]))

    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise ValueError(f"decision value does not change sign on [{lo}, {hi}]")
    return float(bisect(f, lo, hi, xtol=xtol, maxiter=200))


def model_to_dict(model):
    return {
        "format": FORMAT_NAME,
        "format_version": FORMAT_VERSION,
        "kind": model.kind,
        "target_kind": model.target_kind,
        "method": model.method,
        "gamma": model.gamma,
        "sigma": model.sigma,
        "weights": model.weights.tolist(),
        "alpha": model.alpha.tolist(),
        "train_features": model.train_features.tolist(),
    }


def model_from_dict(doc):
    if doc.get("format") != FORMAT_NAME:
        raise ValueError(f"not a model file (format={doc.get('format')!r})")
    if doc.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"unsupported model format version {doc.get('format_version')!r}")
    sigma = doc.get("sigma")
    return SdfModel(
        kind=doc["kind"],
        target_kind=doc["target_kind"],
        train_features=np.array(doc["train_features"], dtype=float),
        weights=np.array(doc["weights"], dtype=float),
        alpha=np.array(doc["alpha"], dtype=float),
        gamma=float(doc["gamma"]),
        sigma=None if sigma is None else float(sigma),
        method=doc.get("method", "sdf"),
    )


def dumps_model(model):
    """JSON text; floats use shortest round-trip repr so reloads are bit-exact."""
    return json.dumps(model_to_dict(model), indent=1, sort_keys=True) + "\n"


def save_model(model, path):
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(dumps_model(model))
    os.replace(tmp, path)


def load_model(path):
    with open(path, encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))
