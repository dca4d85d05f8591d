import numpy as np

from ..metric import pearson_weights, weighted_cross_distances


class KnnModel:
    """k-nearest-neighbour vote under the correlation-weighted metric.

    Ties in the vote go to the label of the single nearest neighbour.
    """

    def __init__(self, train, k, weights=None):
        k = int(k)
        if not 1 <= k <= train.n_samples:
            raise ValueError(f"k must lie in [1, {train.n_samples}], got {k}")
        self.train = train
        self.k = k
        self.weights = pearson_weights(train) if weights is None else np.asarray(weights, dtype=float)

    def neighbour_labels(self, X, kmax=None):
        """Labels of the ``kmax`` nearest training points per query, nearest first."""
        kmax = self.k if kmax is None else kmax
        D = weighted_cross_distances(np.atleast_2d(X), self.train.features, self.weights)
        order = np.argsort(D, axis=1, kind="stable")[:, :kmax]
        return self.train.labels[order]

    def predict(self, X):
        single = np.ndim(X) == 1
        out = votes_to_labels(self.neighbour_labels(X), self.k)
        return float(out[0]) if single else out


def votes_to_labels(neighbours, k):
    s = neighbours[:, :k].sum(axis=1)
    return np.where(s > 0, 1.0, np.where(s < 0, -1.0, neighbours[:, 0]))


def knn_predict(model, x):
    return model.predict(x)
