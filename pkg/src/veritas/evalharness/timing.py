"""Timing statistics in boxplot shape: quartiles plus 1.5-IQR whiskers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np


@dataclass(frozen=True)
class StageStats:
    stage: str
    count: int
    mean: float
    median: float
    q1: float
    q3: float
    whisker_low: float
    whisker_high: float
    minimum: float
    maximum: float

    def __post_init__(self) -> None:
        if not self.q1 <= self.median <= self.q3:
            raise ValueError("quartile ordering violated")
        if not self.minimum <= self.mean <= self.maximum:
            raise ValueError("mean outside sample range")

    def to_json_dict(self) -> dict:
        return {
            "stage": self.stage,
            "count": self.count,
            "mean": self.mean,
            "median": self.median,
            "q1": self.q1,
            "q3": self.q3,
            "whisker_low": self.whisker_low,
            "whisker_high": self.whisker_high,
            "min": self.minimum,
            "max": self.maximum,
        }


@dataclass(frozen=True)
class TimingStats:
    stages: dict[str, StageStats]
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def to_json_dict(self) -> dict:
        return {name: stats.to_json_dict() for name, stats in sorted(self.stages.items())}


def _stage_stats(stage: str, samples: Sequence[float]) -> StageStats:
    values = np.asarray(samples, dtype=np.float64)
    # Type-7 (linear interpolation) quartiles, pinned for comparability.
    q1, median, q3 = np.percentile(values, [25, 50, 75])
    iqr = q3 - q1
    in_low = values[values >= q1 - 1.5 * iqr]
    in_high = values[values <= q3 + 1.5 * iqr]
    return StageStats(
        stage=stage,
        count=len(values),
        mean=float(np.mean(values)),
        median=float(median),
        q1=float(q1),
        q3=float(q3),
        whisker_low=float(np.min(in_low)),
        whisker_high=float(np.max(in_high)),
        minimum=float(np.min(values)),
        maximum=float(np.max(values)),
    )


def timing_stats(samples_by_stage: Mapping[str, Sequence[float]]) -> TimingStats:
    """Per-stage boxplot statistics; empty stages are omitted with a warning."""
    stages: dict[str, StageStats] = {}
    warnings: list[str] = []
    for stage, samples in samples_by_stage.items():
        if not samples:
            warnings.append(f"stage {stage!r} has no samples; omitted")
            continue
        stages[stage] = _stage_stats(stage, samples)
    return TimingStats(stages=stages, warnings=tuple(warnings))
