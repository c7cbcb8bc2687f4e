"""Logistic training contract: gradients, separability, penalties."""

import math

import numpy as np
import pytest

from lobbylens import LogisticModel, SparseVector, logistic_objective, train_logistic

from conftest import random_sparse_vector


def finite_difference_gradient(params, X, y, C, h=1e-6):
    """Central-difference oracle for the L2 objective."""
    grad = np.zeros_like(params)
    for i in range(params.size):
        up = params.copy()
        down = params.copy()
        up[i] += h
        down[i] -= h
        f_up, _ = logistic_objective(up, X, y, C, "l2")
        f_down, _ = logistic_objective(down, X, y, C, "l2")
        grad[i] = (f_up - f_down) / (2 * h)
    return grad


def random_problem(rng, n=50, m=200):
    docs = [random_sparse_vector(rng, m, max_nnz=10) for _ in range(n)]
    y = rng.integers(0, 2, size=n).astype(float)
    y[0], y[1] = 0.0, 1.0
    from lobbylens.features import stack_vectors
    return stack_vectors(docs), y


class TestGradient:
    def test_matches_finite_differences(self, rng):
        X, y = random_problem(rng)
        for _ in range(10):
            params = rng.normal(scale=0.5, size=X.shape[1] + 1)
            _, grad = logistic_objective(params, X, y, C=1.0)
            fd = finite_difference_gradient(params, X, y, C=1.0)
            rel = np.linalg.norm(grad - fd) / max(np.linalg.norm(fd), 1e-12)
            assert rel <= 1e-5

    def test_loss_at_origin_is_log2(self, rng):
        X, y = random_problem(rng)
        value, _ = logistic_objective(np.zeros(X.shape[1] + 1), X, y, C=1.0)
        assert value == pytest.approx(math.log(2.0), abs=1e-12)


class TestTraining:
    def test_one_feature_separable(self):
        X = [SparseVector.from_pairs(1, [(0, 1.0)]) for _ in range(10)]
        X += [SparseVector.from_pairs(1, [(0, -1.0)]) for _ in range(10)]
        y = [1] * 10 + [0] * 10
        model = train_logistic(X, y, penalty="l2", C=10.0)
        assert model.weights[0] > 0
        predictions = [model.predict_proba(v) >= 0.5 for v in X]
        assert predictions == [True] * 10 + [False] * 10

    def test_all_zero_features_balanced(self):
        X = [SparseVector.from_pairs(4, []) for _ in range(8)]
        y = [1, 0] * 4
        model = train_logistic(X, y)
        assert np.allclose(model.weights, 0.0, atol=1e-8)
        assert abs(model.bias) < 1e-8
        assert model.predict_proba(X[0]) == pytest.approx(0.5, abs=1e-8)

    def test_single_class_rejected(self):
        X = [SparseVector.from_pairs(2, [(0, 1.0)])] * 3
        with pytest.raises(ValueError, match="single class"):
            train_logistic(X, [1, 1, 1])

    def test_label_count_mismatch(self):
        X = [SparseVector.from_pairs(2, [(0, 1.0)])] * 3
        with pytest.raises(ValueError, match="labels"):
            train_logistic(X, [1, 0])

    def test_mixed_dimensions_rejected(self):
        X = [SparseVector.from_pairs(2, [(0, 1.0)]), SparseVector.from_pairs(3, [(0, 1.0)])]
        with pytest.raises(ValueError, match="mismatch"):
            train_logistic(X, [0, 1])

    def test_objective_history_non_increasing(self, rng):
        X, y = random_problem(rng, n=80, m=60)
        for penalty in ("l2", "l1"):
            model = train_logistic(X, y, penalty=penalty, C=1.0)
            history = np.array(model.objective_history)
            assert history.size >= 2
            assert np.all(np.diff(history) <= 1e-12), penalty

    def test_l1_produces_exact_zeros(self, rng):
        X, y = random_problem(rng, n=60, m=120)
        model = train_logistic(X, y, penalty="l1", C=0.01)
        assert model.n_nonzero_weights < 120
        assert np.sum(model.weights == 0.0) > 0

    def test_l2_reaches_gradient_tolerance(self, rng):
        X, y = random_problem(rng, n=60, m=40)
        tol = 1e-6
        model = train_logistic(X, y, penalty="l2", C=1.0, tol=tol)
        assert model.converged
        params = np.concatenate([model.weights, [model.bias]])
        _, grad = logistic_objective(params, X, y, C=1.0)
        assert np.max(np.abs(grad)) <= tol

    def test_max_iter_sets_warning_flag(self, rng):
        X, y = random_problem(rng, n=60, m=40)
        model = train_logistic(X, y, penalty="l2", C=100.0, tol=1e-12, max_iter=2)
        assert not model.converged

    def test_invalid_penalty(self):
        X = [SparseVector.from_pairs(1, [(0, 1.0)]), SparseVector.from_pairs(1, [])]
        with pytest.raises(ValueError, match="penalty"):
            train_logistic(X, [1, 0], penalty="elastic")


class TestPredictProba:
    def test_sigma_zero(self):
        model = LogisticModel(weights=np.zeros(2), bias=0.0, penalty="l2", C=1.0)
        assert model.predict_proba(SparseVector.from_pairs(2, [(0, 3.0)])) == 0.5

    def test_sigma_log_three(self):
        model = LogisticModel(weights=np.array([math.log(3.0)]), bias=0.0,
                              penalty="l2", C=1.0)
        v = SparseVector.from_pairs(1, [(0, 1.0)])
        assert model.predict_proba(v) == pytest.approx(0.75, abs=1e-12)

    def test_dimension_mismatch(self):
        model = LogisticModel(weights=np.zeros(3), bias=0.0, penalty="l2", C=1.0)
        with pytest.raises(ValueError, match="dimension"):
            model.predict_proba(SparseVector.from_pairs(2, [(0, 1.0)]))

    def test_probability_bounds_and_boundary(self, rng):
        X, y = random_problem(rng, n=40, m=30)
        model = train_logistic(X, y)
        for _ in range(50):
            v = random_sparse_vector(rng, 30)
            p = model.predict_proba(v)
            assert 0.0 <= p <= 1.0
            assert (p >= 0.5) == (model.decision_function(v) >= 0.0)

    def test_scaling_preserves_ranking(self, rng):
        X, y = random_problem(rng, n=40, m=30)
        model = train_logistic(X, y)
        for lam in (0.5, 2.0, 7.3):
            a = random_sparse_vector(rng, 30, max_nnz=8)
            b = random_sparse_vector(rng, 30, max_nnz=8)
            scale = lambda v: SparseVector(v.dimension, v.indices, v.values * lam)
            raw = model.decision_function(a) - model.bias
            raw_b = model.decision_function(b) - model.bias
            scaled = model.decision_function(scale(a)) - model.bias
            scaled_b = model.decision_function(scale(b)) - model.bias
            assert np.sign(raw - raw_b) == np.sign(scaled - scaled_b)
