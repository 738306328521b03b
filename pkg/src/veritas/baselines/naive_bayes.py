"""Multinomial naive Bayes over raw token counts.

The multinomial event model is count-based, so this classifier consumes raw
counts rather than tf-idf weights. Additive smoothing keeps every token
likelihood positive; ties in the log-posterior resolve to Unreliable.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from ..core import BinaryLabel
from ..errors import TrainingError

FORMAT_VERSION = 1


@dataclass(frozen=True)
class NbModel:
    class_log_priors: dict[BinaryLabel, float]
    token_log_likelihoods: dict[BinaryLabel, dict[str, float]]
    vocabulary: tuple[str, ...]
    alpha: float

    def to_json_dict(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "kind": "naive-bayes",
            "alpha": self.alpha,
            "vocabulary": list(self.vocabulary),
            "class_log_priors": {
                label.value: value for label, value in self.class_log_priors.items()
            },
            "token_log_likelihoods": {
                label.value: table
                for label, table in self.token_log_likelihoods.items()
            },
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "NbModel":
        return cls(
            class_log_priors={
                BinaryLabel(label): float(value)
                for label, value in payload["class_log_priors"].items()
            },
            token_log_likelihoods={
                BinaryLabel(label): {t: float(v) for t, v in table.items()}
                for label, table in payload["token_log_likelihoods"].items()
            },
            vocabulary=tuple(payload["vocabulary"]),
            alpha=float(payload["alpha"]),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json_dict()) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "NbModel":
        return cls.from_json_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def train_nb(
    docs: Sequence[Sequence[str]],
    labels: Sequence[BinaryLabel],
    *,
    alpha: float = 1.0,
) -> NbModel:
    if len(docs) != len(labels):
        raise TrainingError("docs and labels differ in length")
    if len(set(labels)) < 2:
        raise TrainingError("both classes must be present in training data")
    if alpha <= 0:
        raise TrainingError("smoothing alpha must be positive")

    vocabulary = tuple(sorted({token for doc in docs for token in doc}))
    vocab_size = len(vocabulary)
    class_doc_counts: Counter[BinaryLabel] = Counter(labels)
    token_counts: dict[BinaryLabel, Counter[str]] = {
        label: Counter() for label in class_doc_counts
    }
    for doc, label in zip(docs, labels):
        token_counts[label].update(doc)

    class_log_priors = {
        label: math.log(count / len(docs)) for label, count in class_doc_counts.items()
    }
    token_log_likelihoods: dict[BinaryLabel, dict[str, float]] = {}
    for label, counts in token_counts.items():
        total = sum(counts.values())
        denominator = total + alpha * vocab_size
        token_log_likelihoods[label] = {
            token: math.log((counts.get(token, 0) + alpha) / denominator)
            for token in vocabulary
        }
    return NbModel(
        class_log_priors=class_log_priors,
        token_log_likelihoods=token_log_likelihoods,
        vocabulary=vocabulary,
        alpha=alpha,
    )


def predict_nb(model: NbModel, doc: Sequence[str]) -> BinaryLabel:
    """Argmax of the class log-posterior over in-vocabulary tokens.

    Tokens outside the vocabulary contribute nothing, so an all-unseen query
    falls back to the class priors. Exact ties resolve to Unreliable.
    """
    scores: dict[BinaryLabel, float] = {}
    known = set(model.vocabulary)
    for label, prior in model.class_log_priors.items():
        table = model.token_log_likelihoods[label]
        scores[label] = prior + sum(table[t] for t in doc if t in known)
    best_reliable = scores.get(BinaryLabel.RELIABLE, -math.inf)
    best_unreliable = scores.get(BinaryLabel.UNRELIABLE, -math.inf)
    return BinaryLabel.RELIABLE if best_reliable > best_unreliable else BinaryLabel.UNRELIABLE
