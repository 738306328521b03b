"""L2-regularized logistic regression trained by full-batch gradient descent.

Deterministic by construction: zero-initialized weights, fixed epoch count,
fixed data order. The seed in the training config only matters when callers
shuffle upstream; it is recorded so runs stay reproducible end to end.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy import sparse

from ..core import BinaryLabel
from ..errors import TrainingError
from .tfidf import SparseVector

FORMAT_VERSION = 1


@dataclass(frozen=True)
class TrainingConfig:
    learning_rate: float = 0.5
    epochs: int = 200
    l2: float = 1e-4
    seed: int = 42


@dataclass(frozen=True)
class LogRegModel:
    weights: np.ndarray
    bias: float
    config: TrainingConfig

    def __post_init__(self) -> None:
        if not np.all(np.isfinite(self.weights)) or not math.isfinite(self.bias):
            raise ValueError("model parameters must be finite")

    def to_json_dict(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "kind": "logreg",
            "weights": self.weights.tolist(),
            "bias": self.bias,
            "config": {
                "learning_rate": self.config.learning_rate,
                "epochs": self.config.epochs,
                "l2": self.config.l2,
                "seed": self.config.seed,
            },
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "LogRegModel":
        cfg = payload["config"]
        return cls(
            weights=np.asarray(payload["weights"], dtype=np.float64),
            bias=float(payload["bias"]),
            config=TrainingConfig(
                learning_rate=float(cfg["learning_rate"]),
                epochs=int(cfg["epochs"]),
                l2=float(cfg["l2"]),
                seed=int(cfg["seed"]),
            ),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json_dict()) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "LogRegModel":
        return cls.from_json_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def _to_csr(vectors: Sequence[SparseVector], dim: int) -> sparse.csr_matrix:
    data: list[float] = []
    indices: list[int] = []
    indptr = [0]
    for vector in vectors:
        for index, weight in vector.entries:
            indices.append(index)
            data.append(weight)
        indptr.append(len(indices))
    return sparse.csr_matrix(
        (np.array(data), np.array(indices, dtype=np.int64), np.array(indptr, dtype=np.int64)),
        shape=(len(vectors), dim),
    )


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(z, -500, 500)))


def log_loss_and_gradient(
    matrix: sparse.csr_matrix,
    target: np.ndarray,
    weights: np.ndarray,
    bias: float,
    l2: float,
) -> tuple[float, np.ndarray, float]:
    """Mean log loss with L2 penalty (bias excluded), and its gradient."""
    n = matrix.shape[0]
    probs = _sigmoid(matrix @ weights + bias)
    eps = 1e-12
    loss = float(
        -np.mean(target * np.log(probs + eps) + (1 - target) * np.log(1 - probs + eps))
        + 0.5 * l2 * float(weights @ weights)
    )
    error = probs - target
    grad_w = matrix.T @ error / n + l2 * weights
    grad_b = float(np.mean(error))
    return loss, grad_w, grad_b


def train_logreg(
    vectors: Sequence[SparseVector],
    labels: Sequence[BinaryLabel],
    dim: int,
    config: TrainingConfig = TrainingConfig(),
) -> LogRegModel:
    if len(vectors) != len(labels):
        raise TrainingError("vectors and labels differ in length")
    if len(set(labels)) < 2:
        raise TrainingError("both classes must be present in training data")

    matrix = _to_csr(vectors, dim)
    target = np.array([1.0 if lab is BinaryLabel.RELIABLE else 0.0 for lab in labels])
    weights = np.zeros(dim)
    bias = 0.0
    for epoch in range(config.epochs):
        loss, grad_w, grad_b = log_loss_and_gradient(
            matrix, target, weights, bias, config.l2
        )
        if not math.isfinite(loss):
            raise TrainingError(
                f"training diverged at epoch {epoch}; try a smaller learning rate"
            )
        weights = weights - config.learning_rate * grad_w
        bias = bias - config.learning_rate * grad_b
    return LogRegModel(weights=weights, bias=bias, config=config)


def decision_value(model: LogRegModel, vector: SparseVector) -> float:
    value = model.bias
    for index, weight in vector.entries:
        value += model.weights[index] * weight
    return value


def predict_logreg(model: LogRegModel, vector: SparseVector) -> BinaryLabel:
    """Reliable iff sigmoid(w.x + b) >= 0.5, i.e. the decision value is >= 0."""
    return (
        BinaryLabel.RELIABLE
        if decision_value(model, vector) >= 0.0
        else BinaryLabel.UNRELIABLE
    )
