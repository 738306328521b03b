"""Agreement analysis: which claims each model alone gets right or wrong."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from ..core import BinaryLabel

MAX_MODELS = 4


@dataclass(frozen=True)
class AgreementReport:
    """Correct/incorrect id sets per model plus exact-region cardinalities.

    `correct_regions` maps each non-empty model subset S to the number of ids
    classified correctly by exactly the models in S (and no others);
    `incorrect_regions` is the same for errors. Region counts containing a
    model therefore sum to that model's total.
    """

    correct: dict[str, frozenset[str]]
    incorrect: dict[str, frozenset[str]]
    unique_correct: dict[str, frozenset[str]]
    unique_incorrect: dict[str, frozenset[str]]
    correct_regions: dict[tuple[str, ...], int]
    incorrect_regions: dict[tuple[str, ...], int]

    def to_json_dict(self) -> dict:
        return {
            "models": sorted(self.correct),
            "correct_counts": {m: len(ids) for m, ids in sorted(self.correct.items())},
            "incorrect_counts": {m: len(ids) for m, ids in sorted(self.incorrect.items())},
            "unique_correct": {m: sorted(ids) for m, ids in sorted(self.unique_correct.items())},
            "unique_incorrect": {m: sorted(ids) for m, ids in sorted(self.unique_incorrect.items())},
            "correct_regions": {"|".join(k): v for k, v in sorted(self.correct_regions.items())},
            "incorrect_regions": {"|".join(k): v for k, v in sorted(self.incorrect_regions.items())},
        }


def _regions(sets: Mapping[str, frozenset[str]]) -> dict[tuple[str, ...], int]:
    models = sorted(sets)
    regions: dict[tuple[str, ...], int] = {}
    for size in range(1, len(models) + 1):
        for subset in combinations(models, size):
            inside = frozenset.intersection(*(sets[m] for m in subset))
            outside = frozenset.union(
                *(sets[m] for m in models if m not in subset), frozenset()
            )
            regions[subset] = len(inside - outside)
    return regions


def agreement_analysis(
    predictions_by_model: Mapping[str, Mapping[str, BinaryLabel]],
    labels: Mapping[str, BinaryLabel],
) -> AgreementReport:
    """Set arithmetic over per-model predictions on an identical id set."""
    if len(predictions_by_model) < 2:
        raise ValueError("agreement analysis needs at least two models")
    if len(predictions_by_model) > MAX_MODELS:
        raise ValueError(f"agreement analysis supports up to {MAX_MODELS} models")
    id_set = set(labels)
    for model, predictions in predictions_by_model.items():
        if set(predictions) != id_set:
            raise ValueError(f"model {model!r} predictions do not cover the label ids")

    correct: dict[str, frozenset[str]] = {}
    incorrect: dict[str, frozenset[str]] = {}
    for model, predictions in predictions_by_model.items():
        right = frozenset(i for i in id_set if predictions[i] is labels[i])
        correct[model] = right
        incorrect[model] = frozenset(id_set - right)

    unique_correct = {
        model: correct[model]
        - frozenset().union(*(correct[m] for m in correct if m != model))
        for model in correct
    }
    unique_incorrect = {
        model: incorrect[model]
        - frozenset().union(*(incorrect[m] for m in incorrect if m != model))
        for model in incorrect
    }
    return AgreementReport(
        correct=correct,
        incorrect=incorrect,
        unique_correct=unique_correct,
        unique_incorrect=unique_incorrect,
        correct_regions=_regions(correct),
        incorrect_regions=_regions(incorrect),
    )
