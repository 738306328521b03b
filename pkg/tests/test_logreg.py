import math

import numpy as np
import pytest

from veritas.baselines.logreg import (
    LogRegModel,
    TrainingConfig,
    _to_csr,
    decision_value,
    log_loss_and_gradient,
    predict_logreg,
    train_logreg,
)
from veritas.baselines.tfidf import SparseVector
from veritas.core import BinaryLabel
from veritas.errors import TrainingError

R = BinaryLabel.RELIABLE
U = BinaryLabel.UNRELIABLE


def vec(*entries):
    return SparseVector(tuple(entries))


SEPARABLE = [
    (vec((0, 1.0)), R),
    (vec((0, 0.8), (1, 0.1)), R),
    (vec((1, 1.0)), U),
    (vec((0, 0.05), (1, 0.9)), U),
]


def test_linearly_separable_toy_reaches_full_training_accuracy():
    vectors = [v for v, _ in SEPARABLE]
    labels = [lab for _, lab in SEPARABLE]
    model = train_logreg(vectors, labels, dim=2, config=TrainingConfig(epochs=500))
    predictions = [predict_logreg(model, v) for v in vectors]
    assert predictions == labels


def test_zero_vector_predicted_by_bias_sign():
    vectors = [vec((0, 1.0)), vec((1, 1.0)), vec((0, 0.5))]
    labels = [R, U, R]  # imbalance pushes the bias positive
    model = train_logreg(vectors, labels, dim=2, config=TrainingConfig(epochs=300))
    assert model.bias > 0
    assert predict_logreg(model, vec()) is R

    flipped = train_logreg(vectors, [U, R, U], dim=2, config=TrainingConfig(epochs=300))
    assert flipped.bias < 0
    assert predict_logreg(flipped, vec()) is U


def test_loss_non_increasing_per_epoch():
    vectors = [v for v, _ in SEPARABLE]
    labels = [lab for _, lab in SEPARABLE]
    matrix = _to_csr(vectors, 2)
    target = np.array([1.0, 1.0, 0.0, 0.0])
    config = TrainingConfig(learning_rate=0.3, epochs=200, l2=1e-4)
    weights = np.zeros(2)
    bias = 0.0
    losses = []
    for _ in range(config.epochs):
        loss, grad_w, grad_b = log_loss_and_gradient(matrix, target, weights, bias, config.l2)
        losses.append(loss)
        weights -= config.learning_rate * grad_w
        bias -= config.learning_rate * grad_b
    for earlier, later in zip(losses, losses[1:]):
        assert later <= earlier + 1e-9


def test_gradient_matches_central_finite_differences():
    rng = np.random.default_rng(77)
    for _ in range(20):
        n, dim = int(rng.integers(2, 8)), int(rng.integers(2, 6))
        dense = rng.normal(size=(n, dim)) * (rng.random(size=(n, dim)) > 0.3)
        vectors = [
            SparseVector(tuple((j, float(dense[i, j])) for j in range(dim) if dense[i, j]))
            for i in range(n)
        ]
        matrix = _to_csr(vectors, dim)
        target = (rng.random(n) > 0.5).astype(float)
        weights = rng.normal(size=dim)
        bias = float(rng.normal())
        l2 = 1e-3
        _, grad_w, grad_b = log_loss_and_gradient(matrix, target, weights, bias, l2)

        h = 1e-6
        for j in range(dim):
            bumped = weights.copy()
            bumped[j] += h
            loss_plus = log_loss_and_gradient(matrix, target, bumped, bias, l2)[0]
            bumped[j] -= 2 * h
            loss_minus = log_loss_and_gradient(matrix, target, bumped, bias, l2)[0]
            numeric = (loss_plus - loss_minus) / (2 * h)
            denom = max(abs(numeric), abs(grad_w[j]), 1e-8)
            assert abs(grad_w[j] - numeric) / denom < 1e-5
        loss_plus = log_loss_and_gradient(matrix, target, weights, bias + h, l2)[0]
        loss_minus = log_loss_and_gradient(matrix, target, weights, bias - h, l2)[0]
        numeric_b = (loss_plus - loss_minus) / (2 * h)
        denom = max(abs(numeric_b), abs(grad_b), 1e-8)
        assert abs(grad_b - numeric_b) / denom < 1e-5


def test_training_is_deterministic():
    vectors = [v for v, _ in SEPARABLE]
    labels = [lab for _, lab in SEPARABLE]
    a = train_logreg(vectors, labels, dim=2)
    b = train_logreg(vectors, labels, dim=2)
    assert np.array_equal(a.weights, b.weights)
    assert a.bias == b.bias


def test_divergence_raises_training_error():
    vectors = [vec((0, 1e3)), vec((0, -1e3))]
    labels = [R, U]
    with pytest.raises(TrainingError, match="learning rate"):
        train_logreg(
            vectors,
            labels,
            dim=1,
            config=TrainingConfig(learning_rate=1e12, epochs=200, l2=1e30),
        )


def test_single_class_rejected():
    with pytest.raises(TrainingError):
        train_logreg([vec((0, 1.0)), vec((1, 1.0))], [R, R], dim=2)


def test_decision_boundary_at_half_probability():
    model = LogRegModel(weights=np.array([1.0]), bias=0.0, config=TrainingConfig())
    assert predict_logreg(model, vec((0, 0.0))) is R  # sigmoid(0) = 0.5 inclusive
    assert predict_logreg(model, vec((0, -0.1))) is U
    assert decision_value(model, vec((0, 2.0))) == 2.0


def test_save_load_round_trip(tmp_path):
    vectors = [v for v, _ in SEPARABLE]
    labels = [lab for _, lab in SEPARABLE]
    model = train_logreg(vectors, labels, dim=2)
    path = tmp_path / "logreg.json"
    model.save(path)
    loaded = LogRegModel.load(path)
    assert np.allclose(loaded.weights, model.weights)
    assert loaded.bias == model.bias
    assert loaded.config == model.config
