"""Decision-threshold calibration by exhaustive grid scan over [-1, 1]."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..core import BinaryLabel
from ..errors import CalibrationError


@dataclass(frozen=True)
class CalibrationResult:
    """The threshold that maximizes accuracy on the calibration split."""

    threshold: float
    accuracy_at_threshold: float
    grid_step: float
    split_seed: int

    def __post_init__(self) -> None:
        if not -1.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold {self.threshold} outside [-1, 1]")
        if not 0.0 <= self.accuracy_at_threshold <= 1.0:
            raise ValueError("accuracy must lie in [0, 1]")
        if self.grid_step <= 0:
            raise ValueError("grid_step must be positive")


def threshold_grid(grid_step: float) -> np.ndarray:
    """The scan grid {-1, -1+step, ...} capped at 1."""
    count = int(np.floor(2.0 / grid_step + 1e-9))
    return -1.0 + grid_step * np.arange(count + 1)


def calibrate_threshold(
    scores: Sequence[float],
    labels: Sequence[BinaryLabel],
    grid_step: float = 0.01,
    *,
    split_seed: int = 0,
) -> CalibrationResult:
    """Scan every grid threshold and keep the one maximizing the accuracy of
    the rule (score >= threshold => Reliable). Ties break toward the smallest
    threshold, which makes the result deterministic.
    """
    if len(scores) != len(labels):
        raise CalibrationError("scores and labels differ in length")
    if len(scores) < 2:
        raise CalibrationError("need at least two calibration examples")
    if len(set(labels)) < 2:
        raise CalibrationError(
            "calibration labels are single-class; accuracy is degenerate"
        )
    score_arr = np.asarray(scores, dtype=np.float64)
    if np.any(score_arr < -1.0) or np.any(score_arr > 1.0):
        raise CalibrationError("scores must lie in [-1, 1]")
    if grid_step <= 0:
        raise CalibrationError("grid_step must be positive")

    reliable = np.array([lab is BinaryLabel.RELIABLE for lab in labels])
    grid = threshold_grid(grid_step)
    # predictions[t, i] = score_i >= grid_t
    predictions = score_arr[None, :] >= grid[:, None]
    accuracies = np.mean(predictions == reliable[None, :], axis=1)
    best = int(np.argmax(accuracies))  # argmax takes the first (smallest) maximizer
    return CalibrationResult(
        threshold=float(grid[best]),
        accuracy_at_threshold=float(accuracies[best]),
        grid_step=grid_step,
        split_seed=split_seed,
    )
