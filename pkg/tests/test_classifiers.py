import math

import numpy as np
import pytest

from sdfclassify.classifiers import (
    ContradictoryDuplicatesError,
    GaussianFit,
    KnnModel,
    SdfModel,
    decision_offset,
    estimate_b,
    knn_predict,
    load_model,
    predict,
    prepare_gaussian,
    save_model,
    train_if_regression,
    train_ksvm,
    train_rbfn,
    train_sdf,
    train_sdf_linear,
)
from sdfclassify.dataset import DataError, Dataset, biased_toy, biased_toy_skewed, gen_uniform_square
from sdfclassify.metric import weighted_distance_matrix

GAMMA = 1e-7


@pytest.fixture
def two_point():
    return Dataset([[0.0], [1.0]], [1, -1])


class TestEstimateB:
    def test_two_points(self, two_point):
        D = weighted_distance_matrix(two_point.features, [1.0])
        assert estimate_b(two_point, D).tolist() == [1.0, -1.0]

    def test_biased_toy(self):
        d = biased_toy()
        D = weighted_distance_matrix(d.features, np.ones(2))
        b = estimate_b(d, D)
        r = math.sqrt(4.01)
        assert b == pytest.approx([2.0, r, r, -2.0], abs=1e-15)

    def test_contradictory_duplicates(self):
        d = Dataset([[0.0, 0.0], [0.0, 0.0], [1.0, 1.0]], [1, -1, 1])
        with pytest.raises(ContradictoryDuplicatesError):
            estimate_b(d, weighted_distance_matrix(d.features, np.ones(2)))

    def test_single_class(self):
        d = Dataset([[0.0], [1.0]], [1, 1])
        with pytest.raises(DataError, match="single-class"):
            estimate_b(d, np.zeros((2, 2)))

    def test_brute_force(self):
        d = gen_uniform_square(40, 6)
        D = weighted_distance_matrix(d.features, np.ones(2))
        b = estimate_b(d, D)
        for i in range(d.n_samples):
            opp = [
                math.dist(d.features[i], d.features[j])
                for j in range(d.n_samples)
                if d.labels[j] != d.labels[i]
            ]
            assert b[i] == pytest.approx(d.labels[i] * min(opp), rel=1e-12)
        assert np.all(np.sign(b) == d.labels)


class TestTrainSdf:
    def test_two_point_symmetry(self, two_point):
        m = train_sdf(two_point, GAMMA)
        assert abs(m.decision_function([0.5])) <= 1e-10
        assert m.decision_function([0.25]) > 0
        assert m.decision_function([0.75]) < 0
        assert m.target_kind == "sdf"

    def test_training_agreement(self):
        d = gen_uniform_square(500, 12)
        m = train_sdf(d, GAMMA)
        assert np.mean(m.predict(d.features) == d.labels) >= 0.95

    def test_predicts_training_points(self, two_point):
        m = train_sdf(two_point, GAMMA)
        for x, y in zip(two_point.features, two_point.labels):
            value, label = predict(m, x)
            assert label == y

    def test_permutation_equivariance(self):
        d = gen_uniform_square(80, 1)
        perm = np.random.default_rng(0).permutation(80)
        m0 = train_sdf(d, GAMMA)
        m1 = train_sdf(d.subset(perm), GAMMA)
        assert np.allclose(m1.alpha, m0.alpha[perm], rtol=1e-6, atol=1e-8 * np.abs(m0.alpha).max())
        q = np.random.default_rng(1).uniform(-1, 1, (200, 2))
        assert np.array_equal(m0.predict(q), m1.predict(q))

    def test_scaling_invariance(self):
        d = gen_uniform_square(150, 4)
        c = 3.7
        q = np.random.default_rng(2).uniform(-1, 1, (100, 2))
        m0 = train_sdf(d, GAMMA)
        m1 = train_sdf(Dataset(c * d.features, d.labels), GAMMA)
        assert np.array_equal(m0.predict(q), m1.predict(c * q))

    def test_dimension_mismatch(self, two_point):
        m = train_sdf(two_point, GAMMA)
        with pytest.raises(ValueError):
            m.decision_function([0.1, 0.2])

    def test_single_class_error(self):
        with pytest.raises(DataError):
            train_sdf(Dataset([[0.0], [1.0], [2.0]], [1, 1, 1]), GAMMA)

    def test_sign_zero_is_positive(self, two_point):
        m = train_sdf(two_point, GAMMA)
        zero = SdfModel("gaussian", "sdf", m.train_features, m.weights, np.zeros(2), GAMMA, m.sigma)
        assert predict(zero, [0.3]) == (0.0, 1.0)


class TestIndicatorBaselines:
    def test_shares_kernel_with_sdf(self):
        d = gen_uniform_square(60, 3)
        a, b = train_sdf(d, GAMMA), train_if_regression(d, GAMMA)
        assert np.array_equal(a.gram, b.gram)
        assert a.sigma == b.sigma and np.array_equal(a.weights, b.weights)
        assert b.target_kind == "indicator"

    def test_ksvm_rbfn_tags(self):
        d = gen_uniform_square(60, 3)
        fit = prepare_gaussian(d)
        svm, rbfn, sdf = train_ksvm(d, GAMMA, fit), train_rbfn(d, GAMMA, fit), train_sdf(d, GAMMA, fit)
        assert (svm.method, rbfn.method) == ("svm", "rbfn")
        assert svm.gram is sdf.gram and svm.sigma == rbfn.sigma

    @pytest.mark.parametrize("trainer", [train_if_regression, train_ksvm, train_rbfn])
    def test_two_point_midpoint(self, two_point, trainer):
        assert abs(trainer(two_point, GAMMA).decision_function([0.5])) <= 1e-10

    def test_alpha_bound(self):
        d = gen_uniform_square(30, 9)
        m = train_if_regression(d, 1e-3)
        inv = np.linalg.inv(m.gram + 30 * 1e-3 * np.eye(30))
        assert np.allclose(m.alpha, inv @ d.labels, rtol=1e-8)
        assert np.abs(m.alpha).max() <= np.abs(inv).sum(axis=1).max() + 1e-12

    def test_identity_kernel(self):
        d = gen_uniform_square(8, 2)
        fit = prepare_gaussian(d)
        fit = GaussianFit(fit.weights, fit.distances, fit.sigma, np.eye(8))
        m = train_if_regression(d, 0.05, fit=fit)
        assert np.allclose(m.alpha, d.labels / (1 + 8 * 0.05), rtol=1e-14)


class TestLinearSdf:
    def test_biased_toy_line(self):
        m = train_sdf_linear(biased_toy(), GAMMA)
        w = m.normal_vector()
        assert abs(w[0] / w[1]) <= 1e-6
        assert abs(decision_offset(m)) <= 1e-6
        assert m.decision_function([0.0, 0.0]) == 0.0

    def test_skewed_offset(self):
        m = train_sdf_linear(biased_toy_skewed(20, 0.05, seed=0), GAMMA)
        assert abs(decision_offset(m)) <= 1e-3

    def test_odd_symmetry(self):
        rng = np.random.default_rng(4)
        top = rng.uniform(0.1, 1, (6, 2))
        X = np.vstack([top, top * [1, -1]])
        d = Dataset(X, [1] * 6 + [-1] * 6)
        m = train_sdf_linear(d, GAMMA)
        q = rng.uniform(-1, 1, (50, 2))
        a = m.decision_function(q)
        b = m.decision_function(q * [1, -1])
        assert np.allclose(a, -b, atol=1e-10)


class TestKnn:
    def test_k1_training_point(self):
        d = gen_uniform_square(30, 8)
        m = KnnModel(d, 1)
        for x, y in zip(d.features, d.labels):
            assert knn_predict(m, x) == y

    def test_biased_toy(self):
        d = biased_toy()
        assert knn_predict(KnnModel(d, 1), [0.0, 0.9]) == 1
        assert knn_predict(KnnModel(d, 3), [0.0, -0.5]) == 1
        assert knn_predict(KnnModel(d, 3, weights=np.ones(2)), [0.0, -0.5]) == 1

    def test_tie_goes_to_nearest(self):
        d = Dataset([[0.0], [1.0], [3.0], [4.0]], [1, -1, 1, -1])
        m = KnnModel(d, 2, weights=[1.0])
        assert m.predict([0.9]) == -1
        assert m.predict([0.1]) == 1

    def test_k_range(self):
        with pytest.raises(ValueError):
            KnnModel(biased_toy(), 5)


class TestPersistence:
    @pytest.mark.parametrize("trainer", [train_sdf, train_sdf_linear, train_if_regression])
    def test_roundtrip_bit_identical(self, tmp_path, trainer):
        d = gen_uniform_square(50, 21)
        m = trainer(d, GAMMA)
        p = tmp_path / "m.json"
        save_model(m, str(p))
        back = load_model(str(p))
        q = np.random.default_rng(0).uniform(-1, 1, (100, 2))
        assert np.array_equal(m.decision_function(q), back.decision_function(q))
        assert (back.kind, back.target_kind, back.method) == (m.kind, m.target_kind, m.method)

    def test_rejects_other_format(self, tmp_path):
        p = tmp_path / "x.json"
        p.write_text('{"format": "other"}')
        with pytest.raises(ValueError):
            load_model(str(p))
