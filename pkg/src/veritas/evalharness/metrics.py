"""Binary classification metrics with Reliable as the positive class."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..core import BinaryLabel

POSITIVE_CLASS = BinaryLabel.RELIABLE


@dataclass(frozen=True)
class Confusion:
    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self) -> None:
        if min(self.tp, self.fp, self.fn, self.tn) < 0:
            raise ValueError("confusion counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class MetricsReport:
    model_name: str
    accuracy: float
    precision: float
    recall: float
    f1: float
    confusion: Confusion
    undefined_precision: bool = False
    undefined_recall: bool = False

    def __post_init__(self) -> None:
        for name in ("accuracy", "precision", "recall", "f1"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} {value} outside [0, 1]")

    def to_json_dict(self) -> dict:
        return {
            "model": self.model_name,
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "confusion": {
                "tp": self.confusion.tp,
                "fp": self.confusion.fp,
                "fn": self.confusion.fn,
                "tn": self.confusion.tn,
            },
            "undefined_precision": self.undefined_precision,
            "undefined_recall": self.undefined_recall,
        }


def metrics_from_confusion(confusion: Confusion, model_name: str) -> MetricsReport:
    total = confusion.total
    if total == 0:
        raise ValueError("cannot compute metrics over zero examples")
    accuracy = (confusion.tp + confusion.tn) / total
    undefined_precision = (confusion.tp + confusion.fp) == 0
    undefined_recall = (confusion.tp + confusion.fn) == 0
    precision = 0.0 if undefined_precision else confusion.tp / (confusion.tp + confusion.fp)
    recall = 0.0 if undefined_recall else confusion.tp / (confusion.tp + confusion.fn)
    f1 = 0.0 if precision + recall == 0 else 2 * precision * recall / (precision + recall)
    return MetricsReport(
        model_name=model_name,
        accuracy=accuracy,
        precision=precision,
        recall=recall,
        f1=f1,
        confusion=confusion,
        undefined_precision=undefined_precision,
        undefined_recall=undefined_recall,
    )


def compute_metrics(
    predictions: Sequence[BinaryLabel],
    labels: Sequence[BinaryLabel],
    *,
    model_name: str = "model",
) -> MetricsReport:
    if len(predictions) != len(labels):
        raise ValueError(
            f"{len(predictions)} predictions for {len(labels)} labels"
        )
    if not predictions:
        raise ValueError("cannot compute metrics over zero examples")
    tp = fp = fn = tn = 0
    for predicted, actual in zip(predictions, labels):
        if predicted is POSITIVE_CLASS:
            if actual is POSITIVE_CLASS:
                tp += 1
            else:
                fp += 1
        else:
            if actual is POSITIVE_CLASS:
                fn += 1
            else:
                tn += 1
    return metrics_from_confusion(Confusion(tp, fp, fn, tn), model_name)
