"""Datasets, CSV ingestion, seeded splits and the synthetic geometric problems.

The quadrant problem lives on ``X = [-1, 1]^2`` with ``A = [0, 1]^2``. Points
on the boundary of ``A`` belong to ``A``.
"""

import csv
import io
import math
import os
from dataclasses import dataclass, field

import numpy as np

from ._rng import stream


class DataError(ValueError):
    """Malformed or unusable input data."""


def _frozen(arr):
    arr = np.array(arr, dtype=float, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Dataset:
    features: np.ndarray
    labels: np.ndarray
    feature_names: tuple = field(default=None)

    def __post_init__(self):
        X = np.asarray(self.features, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        y = np.asarray(self.labels, dtype=float).ravel()
        if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
            raise DataError(f"features must be a non-empty N x d matrix, got shape {X.shape}")
        if X.shape[0] != y.shape[0]:
            raise DataError(f"{X.shape[0]} feature rows but {y.shape[0]} labels")
        if not np.all(np.isfinite(X)):
            raise DataError("features contain NaN or Inf")
        if not np.all((y == 1) | (y == -1)):
            raise DataError("labels must be -1 or +1")
        names = self.feature_names
        if names is not None:
            names = tuple(str(n) for n in names)
            if len(names) != X.shape[1]:
                raise DataError(f"{len(names)} feature names for {X.shape[1]} columns")
        object.__setattr__(self, "features", _frozen(X))
        object.__setattr__(self, "labels", _frozen(y))
        object.__setattr__(self, "feature_names", names)

    @property
    def n_samples(self):
        return self.features.shape[0]

    @property
    def n_features(self):
        return self.features.shape[1]

    def subset(self, idx):
        idx = np.asarray(idx, dtype=int)
        return Dataset(self.features[idx], self.labels[idx], self.feature_names)

    def both_classes(self):
        return bool(np.any(self.labels > 0) and np.any(self.labels < 0))

    def __len__(self):
        return self.n_samples

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            np.array_equal(self.features, other.features)
            and np.array_equal(self.labels, other.labels)
            and self.feature_names == other.feature_names
        )


def load_csv(path, label_column, positive_label):
    """Read a headed CSV; ``positive_label`` becomes +1, the other label value -1."""
    if not os.path.isfile(path):
        raise DataError(f"no such file: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file, expected a header row") from None
        header = [h.strip() for h in header]
        if label_column not in header:
            raise DataError(f"{path}: label column {label_column!r} not in header {header}")
        li = header.index(label_column)
        names = [h for j, h in enumerate(header) if j != li]
        if not names:
            raise DataError(f"{path}: no feature columns besides {label_column!r}")
        rows, raw_labels = [], []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise DataError(f"{path}:{lineno}: expected {len(header)} cells, got {len(row)}")
            values = []
            for j, cell in enumerate(row):
                if j == li:
                    continue
                try:
                    v = float(cell)
                except ValueError:
                    raise DataError(
                        f"{path}:{lineno}: column {header[j]!r}: cannot parse {cell!r} as a number"
                    ) from None
                if not math.isfinite(v):
                    raise DataError(f"{path}:{lineno}: column {header[j]!r}: non-finite value {cell!r}")
                values.append(v)
            rows.append(values)
            raw_labels.append(row[li].strip())
    if not rows:
        raise DataError(f"{path}: zero samples")
    distinct = sorted(set(raw_labels))
    if len(distinct) != 2:
        raise DataError(f"{path}: label cardinality != 2 (found {len(distinct)}: {distinct[:5]})")
    positive_label = str(positive_label).strip()
    if positive_label not in distinct:
        raise DataError(f"{path}: positive label {positive_label!r} not among label values {distinct}")
    y = np.where(np.array(raw_labels) == positive_label, 1.0, -1.0)
    return Dataset(np.array(rows), y, names)


def dumps_csv(data, label_column="label"):
    """CSV text with the features followed by a trailing -1/+1 label column."""
    names = data.feature_names or tuple(f"x{k + 1}" for k in range(data.n_features))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([*names, label_column])
    for x, y in zip(data.features, data.labels):
        w.writerow([repr(float(v)) for v in x] + [int(y)])
    return buf.getvalue()


def save_csv(data, path, label_column="label"):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(dumps_csv(data, label_column))


def split_sizes(n):
    n_train = -(-2 * n // 3)
    return n_train, n - n_train


def split_indices(n, seed, *extra):
    if n < 3:
        raise DataError(f"need at least 3 samples to split 2:1, got {n}")
    perm = stream(seed, "split", *extra).permutation(n)
    n_train, _ = split_sizes(n)
    return np.sort(perm[:n_train]), np.sort(perm[n_train:])


def split_2to1(data, seed):
    """Random 2:1 train/test split; ceil(2N/3) rows go to train."""
    tr, te = split_indices(data.n_samples, seed)
    return data.subset(tr), data.subset(te)


def indicator(x):
    """+1 inside the closed quadrant [0, 1]^2, -1 elsewhere. Works on (2,) or (n, 2)."""
    x = np.asarray(x, dtype=float)
    inside = (x[..., 0] >= 0) & (x[..., 1] >= 0)
    out = np.where(inside, 1.0, -1.0)
    return float(out) if out.ndim == 0 else out


def exact_sdf_quadrant(x):
    x = np.asarray(x, dtype=float)
    x1, x2 = x[..., 0], x[..., 1]
    inside = (x1 >= 0) & (x2 >= 0)
    outside = -np.hypot(np.minimum(x1, 0.0), np.minimum(x2, 0.0))
    out = np.where(inside, np.minimum(x1, x2), outside)
    return float(out) if out.ndim == 0 else out


def _uniform_square(n, rng):
    return rng.uniform(-1.0, 1.0, size=(n, 2))


def _check_count(name, n):
    if int(n) != n or n < 1:
        raise DataError(f"{name} must be a positive integer, got {n}")
    return int(n)


def gen_uniform_square(n, seed):
    n = _check_count("n", n)
    X = _uniform_square(n, stream(seed, "uniform_square"))
    return Dataset(X, indicator(X).reshape(-1))


def gen_checkerboard(n, grid, seed):
    n = _check_count("n", n)
    grid = _check_count("grid", grid)
    X = _uniform_square(n, stream(seed, "checkerboard", grid))
    cells = np.clip(np.floor((X + 1.0) / 2.0 * grid), 0, grid - 1).astype(int)
    y = np.where((cells[:, 0] + cells[:, 1]) % 2 == 0, 1.0, -1.0)
    return Dataset(X, y)


def gen_blobs(n, seed, separation=10.0, dim=2):
    """Two unit-variance Gaussian clouds whose centres are ``separation`` apart."""
    n = _check_count("n", n)
    rng = stream(seed, "blobs", dim)
    y = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    centre = np.zeros(dim)
    centre[0] = separation / 2.0
    X = rng.standard_normal((n, dim)) + y[:, None] * centre
    return Dataset(X, y)


def biased_toy():
    X = [[0.0, 1.0], [0.1, 1.0], [-0.1, 1.0], [0.0, -1.0]]
    return Dataset(X, [1.0, 1.0, 1.0, -1.0])


def biased_toy_skewed(extra=20, radius=0.05, seed=0):
    """``biased_toy`` plus ``extra`` +1 points drawn uniformly from the disc of ``radius`` around (0, 1)."""
    base = biased_toy()
    rng = stream(seed, "biased_skew", extra)
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, extra))
    t = rng.uniform(0.0, 2 * np.pi, extra)
    pts = np.column_stack([r * np.cos(t), 1.0 + r * np.sin(t)])
    return Dataset(
        np.vstack([base.features, pts]),
        np.concatenate([base.labels, np.ones(extra)]),
    )
