"""Reductions from a pair matrix (or document pair) to a consistency score."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Sequence

import numpy as np

from ..core import BinaryLabel
from ..datafiles import load_default_conv_config_json
from .matrix import PairMatrix

if TYPE_CHECKING:  # pragma: no cover
    from .backends import ConsistencyBackend


def summac_zs_score(matrix: PairMatrix) -> float:
    """Zero-shot reduction: per hypothesis sentence take the best-supporting
    premise sentence (column max of the signal), then average over columns.

    Pure function with range [-1, 1]. For one-sentence hypotheses this is just
    the maximum signal over premise sentences.
    """
    signals = matrix.signals()
    return float(np.mean(np.max(signals, axis=0)))


@dataclass(frozen=True)
class ConvScorerConfig:
    """Parameters of the histogram-convolution reduction."""

    bin_count: int
    weights: tuple[float, ...]
    bias: float

    def __post_init__(self) -> None:
        if self.bin_count < 1:
            raise ValueError("bin_count must be positive")
        if len(self.weights) != self.bin_count:
            raise ValueError(
                f"{len(self.weights)} weights for {self.bin_count} bins"
            )

    @classmethod
    def default(cls) -> "ConvScorerConfig":
        return cls.from_json(load_default_conv_config_json())

    @classmethod
    def from_json(cls, payload: dict) -> "ConvScorerConfig":
        return cls(
            bin_count=int(payload["bin_count"]),
            weights=tuple(float(w) for w in payload["weights"]),
            bias=float(payload["bias"]),
        )

    @classmethod
    def from_file(cls, path: str | Path) -> "ConvScorerConfig":
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))

    def to_file(self, path: str | Path) -> None:
        payload = {
            "version": 1,
            "bin_count": self.bin_count,
            "weights": list(self.weights),
            "bias": self.bias,
        }
        Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _column_histograms(signals: np.ndarray, bin_count: int) -> np.ndarray:
    """(N, bin_count) histogram masses per hypothesis column, normalized by M."""
    m, n = signals.shape
    hists = np.empty((n, bin_count), dtype=np.float64)
    for j in range(n):
        counts, _ = np.histogram(signals[:, j], bins=bin_count, range=(-1.0, 1.0))
        hists[j] = counts / m
    return hists


def summac_conv_score(matrix: PairMatrix, config: ConvScorerConfig) -> float:
    """Histogram reduction: bin each column's signal distribution over [-1, 1],
    map the histogram through the learned weights plus bias, clamp to [-1, 1],
    and average the per-column scalars.
    """
    signals = matrix.signals()
    hists = _column_histograms(signals, config.bin_count)
    weights = np.asarray(config.weights, dtype=np.float64)
    column_scores = np.clip(hists @ weights + config.bias, -1.0, 1.0)
    return float(np.mean(column_scores))


def fit_conv_weights(
    matrices: Sequence[PairMatrix],
    labels: Sequence[BinaryLabel],
    *,
    bin_count: int = 50,
    learning_rate: float = 0.5,
    epochs: int = 500,
    l2: float = 1e-3,
) -> ConvScorerConfig:
    """Trained-at-calibration fallback: fit histogram weights by logistic
    regression on the calibration split, one feature vector per example
    (mean of its column histograms).

    Deterministic: zero-initialized full-batch gradient descent.
    """
    if len(matrices) != len(labels):
        raise ValueError("matrices and labels differ in length")
    if len(matrices) < 2 or len(set(labels)) < 2:
        raise ValueError("need at least two examples covering both classes")

    features = np.stack(
        [
            _column_histograms(m.signals(), bin_count).mean(axis=0)
            for m in matrices
        ]
    )
    target = np.array(
        [1.0 if lab is BinaryLabel.RELIABLE else 0.0 for lab in labels]
    )
    weights = np.zeros(bin_count)
    bias = 0.0
    n = len(target)
    for _ in range(epochs):
        logits = features @ weights + bias
        probs = 1.0 / (1.0 + np.exp(-logits))
        error = probs - target
        weights -= learning_rate * (features.T @ error / n + l2 * weights)
        bias -= learning_rate * float(np.mean(error))
    return ConvScorerConfig(
        bin_count=bin_count, weights=tuple(float(w) for w in weights), bias=float(bias)
    )


def factcc_classify(
    premise: str, claim: str, backend: "ConsistencyBackend"
) -> tuple[float, BinaryLabel]:
    """Document-level consistency: probability that the claim is supported by
    the premise document, with the Reliable verdict at score >= 0.5 (boundary
    inclusive).
    """
    if not premise.strip() or not claim.strip():
        raise ValueError("premise and claim must be non-empty")
    score = backend.consistency_score(premise, claim)
    verdict = BinaryLabel.RELIABLE if score >= 0.5 else BinaryLabel.UNRELIABLE
    return score, verdict
