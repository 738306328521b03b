"""Term-frequency / inverse-document-frequency vectorization.

Weights follow the plain definitions with no smoothing: tf(t, d) is the count
of t in d divided by the total token count of d, and idf(t) = ln(N / df(t))
where df counts documents containing t. Every token seen at least once is in
the vocabulary, so df >= 1 and the logarithm is always defined.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from ..errors import TrainingError

FORMAT_VERSION = 1


@dataclass(frozen=True)
class SparseVector:
    """Strictly index-sorted (index, weight) pairs."""

    entries: tuple[tuple[int, float], ...]

    def __post_init__(self) -> None:
        indices = [i for i, _ in self.entries]
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise ValueError("indices must be strictly increasing")
        if any(not math.isfinite(w) for _, w in self.entries):
            raise ValueError("weights must be finite")

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class TfIdfModel:
    vocabulary: dict[str, int]
    doc_freq: dict[str, int]
    doc_count: int
    idf: dict[str, float]

    def __post_init__(self) -> None:
        for token, df in self.doc_freq.items():
            if df < 1:
                raise ValueError(f"document frequency for {token!r} is {df}")
        for token in self.vocabulary:
            expected = math.log(self.doc_count / self.doc_freq[token])
            if abs(self.idf[token] - expected) > 1e-12:
                raise ValueError(f"idf for {token!r} violates ln(N/df)")

    def to_json_dict(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "kind": "tfidf",
            "doc_count": self.doc_count,
            "vocabulary": self.vocabulary,
            "doc_freq": self.doc_freq,
            "idf": self.idf,
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "TfIdfModel":
        return cls(
            vocabulary={t: int(i) for t, i in payload["vocabulary"].items()},
            doc_freq={t: int(df) for t, df in payload["doc_freq"].items()},
            doc_count=int(payload["doc_count"]),
            idf={t: float(v) for t, v in payload["idf"].items()},
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json_dict()) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "TfIdfModel":
        return cls.from_json_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def fit_tfidf(corpus: Sequence[Sequence[str]]) -> TfIdfModel:
    """Build vocabulary and idf table from tokenized documents."""
    if not corpus or all(len(doc) == 0 for doc in corpus):
        raise TrainingError("cannot fit tf-idf on an all-empty corpus")
    doc_count = len(corpus)
    doc_freq: Counter[str] = Counter()
    for doc in corpus:
        doc_freq.update(set(doc))
    vocabulary = {token: i for i, token in enumerate(sorted(doc_freq))}
    idf = {token: math.log(doc_count / df) for token, df in doc_freq.items()}
    return TfIdfModel(
        vocabulary=vocabulary,
        doc_freq=dict(doc_freq),
        doc_count=doc_count,
        idf=idf,
    )


def transform(model: TfIdfModel, doc: Sequence[str]) -> SparseVector:
    """tf x idf weights for the in-vocabulary tokens of one document.

    The tf denominator is the document's full token count, out-of-vocabulary
    tokens included, matching the definition of term frequency.
    """
    if not doc:
        return SparseVector(())
    total = len(doc)
    counts = Counter(token for token in doc if token in model.vocabulary)
    entries = sorted(
        (model.vocabulary[token], (count / total) * model.idf[token])
        for token, count in counts.items()
    )
    return SparseVector(tuple(entries))
