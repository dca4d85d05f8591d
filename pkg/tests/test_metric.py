import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdfclassify.dataset import DataError, Dataset, biased_toy, gen_uniform_square
from sdfclassify.metric import (
    DegenerateMetricError,
    gaussian_kernel,
    linear_gram,
    pearson_weights,
    rmsd_sigma,
    weighted_distance_matrix,
)


def brute_distances(X, w):
    n = X.shape[0]
    D = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            D[i, j] = math.sqrt(sum((w[k] * (X[i, k] - X[j, k])) ** 2 for k in range(X.shape[1])))
    return D


def brute_rmsd(D):
    n = len(D)
    s = sum(D[i][j] ** 2 for i in range(n - 1) for j in range(i + 1, n))
    return math.sqrt(2.0 / (n * (n + 1)) * s)


class TestPearson:
    def test_perfect_correlation(self):
        y = np.array([1, -1, 1, 1, -1.0])
        d = Dataset(np.column_stack([y, -y, np.full(5, 3.0)]), y)
        assert pearson_weights(d) == pytest.approx([1.0, -1.0, 0.0], abs=1e-15)

    def test_matches_numpy(self):
        rng = np.random.default_rng(1)
        X = rng.normal(size=(30, 4))
        y = np.where(rng.uniform(size=30) > 0.5, 1.0, -1.0)
        expected = [np.corrcoef(X[:, k], y)[0, 1] for k in range(4)]
        assert pearson_weights(Dataset(X, y)) == pytest.approx(expected, abs=1e-12)

    def test_single_class(self):
        with pytest.raises(DataError, match="single-class"):
            pearson_weights(Dataset([[0.0], [1.0]], [1, 1]))

    def test_too_few(self):
        with pytest.raises(DataError):
            pearson_weights(Dataset([[0.0]], [1]))

    @given(st.floats(0.01, 100), st.floats(-100, 100), st.integers(0, 1000))
    @settings(max_examples=40, deadline=None)
    def test_positive_affine_invariance(self, a, c, seed):
        d = gen_uniform_square(40, seed)
        X = d.features.copy()
        X[:, 0] = a * X[:, 0] + c
        w0 = pearson_weights(d)
        w1 = pearson_weights(Dataset(X, d.labels))
        assert np.max(np.abs(w0 - w1)) <= 1e-12


class TestDistances:
    def test_345(self):
        X = np.array([[0.0, 0.0], [3.0, 4.0]])
        assert weighted_distance_matrix(X, [1, 1])[0, 1] == 5.0
        assert weighted_distance_matrix(X, [1, 0])[0, 1] == 3.0

    def test_zero_weights(self):
        X = np.random.default_rng(0).normal(size=(6, 3))
        assert not weighted_distance_matrix(X, np.zeros(3)).any()

    def test_mismatch(self):
        with pytest.raises(ValueError):
            weighted_distance_matrix(np.zeros((3, 2)), np.ones(3))

    @pytest.mark.parametrize("seed", range(5))
    def test_brute_force(self, seed):
        rng = np.random.default_rng(seed)
        X = rng.normal(size=(15, 4)) * 3
        w = rng.uniform(-1, 1, 4)
        D = weighted_distance_matrix(X, w)
        B = brute_distances(X, w)
        assert np.allclose(D, B, rtol=1e-12, atol=0)
        assert np.array_equal(D, D.T)
        assert np.all(np.diag(D) == 0)

    def test_triangle_inequality(self):
        rng = np.random.default_rng(3)
        D = weighted_distance_matrix(rng.normal(size=(25, 3)), rng.uniform(-1, 1, 3))
        viol = D[:, None, :] - (D[:, :, None] + D[None, :, :])
        assert viol.max() <= 1e-10


class TestSigma:
    def test_hand_values(self):
        assert abs(rmsd_sigma(np.array([[0, 1.0], [1.0, 0]])) - 1 / math.sqrt(3)) <= 1e-12
        D3 = np.ones((3, 3)) - np.eye(3)
        assert abs(rmsd_sigma(D3) - 1 / math.sqrt(2)) <= 1e-12

    def test_brute_force(self):
        rng = np.random.default_rng(8)
        D = weighted_distance_matrix(rng.normal(size=(12, 2)), np.ones(2))
        assert rmsd_sigma(D) == pytest.approx(brute_rmsd(D.tolist()), rel=1e-13)

    def test_homogeneous(self):
        rng = np.random.default_rng(8)
        D = weighted_distance_matrix(rng.normal(size=(12, 2)), np.ones(2))
        assert rmsd_sigma(3.5 * D) == pytest.approx(3.5 * rmsd_sigma(D), rel=1e-14)

    def test_degenerate(self):
        with pytest.raises(DegenerateMetricError):
            rmsd_sigma(np.zeros((4, 4)))


class TestKernels:
    def test_values(self):
        s = 0.7
        D = np.array([[0.0, s * math.sqrt(2), 50.0], [s * math.sqrt(2), 0, 1], [50.0, 1, 0]])
        K = gaussian_kernel(D, s)
        assert K[0, 0] == 1.0
        assert K[0, 1] == pytest.approx(math.exp(-1), abs=1e-15)
        assert 0 <= K[0, 2] < 1e-100

    def test_bad_sigma(self):
        with pytest.raises(ValueError):
            gaussian_kernel(np.zeros((2, 2)), 0.0)

    @pytest.mark.parametrize("n", [5, 50, 200])
    def test_kernel_invariants(self, n):
        rng = np.random.default_rng(n)
        X = rng.normal(size=(n, 3))
        D = weighted_distance_matrix(X, rng.uniform(-1, 1, 3))
        K = gaussian_kernel(D, rmsd_sigma(D))
        ev = np.linalg.eigvalsh(K)
        assert np.array_equal(K, K.T)
        assert np.all(np.diag(K) == 1.0)
        assert np.all((K > 0) & (K <= 1))
        assert ev[0] >= -1e-8 * ev[-1]

    def test_linear_gram(self):
        K = linear_gram(np.eye(3))
        assert np.array_equal(K, np.eye(3))
        K = linear_gram(biased_toy().features)
        assert K[0, 0] == 1.0 and K[0, 3] == -1.0
        assert K[1, 2] == pytest.approx(0.99, abs=1e-15)

    def test_linear_gram_duplicate_row(self):
        X = np.array([[1.0, 2.0], [3.0, -1.0], [1.0, 2.0]])
        K = linear_gram(X)
        assert np.array_equal(K[0], K[2]) and np.array_equal(K[:, 0], K[:, 2])

    def test_scaling_chain(self):
        d = gen_uniform_square(60, 2)
        c = 3.7
        w0 = pearson_weights(d)
        w1 = pearson_weights(Dataset(c * d.features, d.labels))
        assert np.max(np.abs(w0 - w1)) <= 1e-12
        D0 = weighted_distance_matrix(d.features, w0)
        D1 = weighted_distance_matrix(c * d.features, w1)
        assert np.allclose(D1, c * D0, rtol=1e-12, atol=1e-15)
        s0, s1 = rmsd_sigma(D0), rmsd_sigma(D1)
        assert s1 == pytest.approx(c * s0, rel=1e-12)
        assert np.max(np.abs(gaussian_kernel(D0, s0) - gaussian_kernel(D1, s1))) <= 1e-12
