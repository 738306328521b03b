"""NLI distributions and the premise-sentence x hypothesis-sentence pair matrix."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from ..errors import BackendContractError
from .sentences import split_sentences

if TYPE_CHECKING:  # pragma: no cover
    from .backends import NliBackend

SIMPLEX_TOLERANCE = 1e-6


@dataclass(frozen=True)
class NliDistribution:
    """Likelihoods of the three NLI relationships for one sentence pair."""

    entail: float
    contradict: float
    neutral: float

    def __post_init__(self) -> None:
        for name, value in (
            ("entail", self.entail),
            ("contradict", self.contradict),
            ("neutral", self.neutral),
        ):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} component {value} outside [0, 1]")
        total = self.entail + self.contradict + self.neutral
        if abs(total - 1.0) > SIMPLEX_TOLERANCE:
            raise ValueError(f"components sum to {total}, not 1 within {SIMPLEX_TOLERANCE}")

    @property
    def signal(self) -> float:
        """Scalar consistency signal in [-1, 1].

        Defined as entail minus contradict; this is the single place the
        3-class distribution becomes a scalar, so the calibrated threshold
        range [-1, 1] is exactly the signal's range.
        """
        return self.entail - self.contradict


@dataclass(frozen=True)
class PairMatrix:
    """M x N grid of NLI distributions (premise sentences x hypothesis sentences)."""

    premise_sentences: tuple[str, ...]
    hypothesis_sentences: tuple[str, ...]
    cells: tuple[tuple[NliDistribution, ...], ...]

    def __post_init__(self) -> None:
        m, n = len(self.premise_sentences), len(self.hypothesis_sentences)
        if m < 1 or n < 1:
            raise ValueError("pair matrix needs at least one sentence on each side")
        if len(self.cells) != m or any(len(row) != n for row in self.cells):
            raise ValueError(f"cell grid does not match {m}x{n} sentence lists")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.premise_sentences), len(self.hypothesis_sentences)

    def signals(self) -> np.ndarray:
        """The (M, N) array of entail-minus-contradict signals."""
        return np.array(
            [[cell.signal for cell in row] for row in self.cells], dtype=np.float64
        )


def build_pair_matrix(
    premise: str,
    hypothesis: str,
    backend: "NliBackend",
    *,
    batch_size: int = 256,
    max_workers: int = 4,
) -> PairMatrix:
    """Score every premise-sentence / hypothesis-sentence pair through the backend.

    Pairs are sent in batches of at most batch_size; batches may run
    concurrently, and results are reassembled by pair index so completion
    order never matters.
    """
    premise_sents = tuple(split_sentences(premise))
    hypothesis_sents = tuple(split_sentences(hypothesis))
    pairs = [(p, h) for p in premise_sents for h in hypothesis_sents]

    batches = [pairs[i : i + batch_size] for i in range(0, len(pairs), batch_size)]
    if len(batches) == 1:
        flat = list(_score_batch(backend, batches[0]))
    else:
        flat = [None] * len(pairs)  # type: ignore[list-item]
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            results = pool.map(lambda b: _score_batch(backend, b), batches)
            offset = 0
            for batch, scored in zip(batches, results):
                flat[offset : offset + len(batch)] = scored
                offset += len(batch)

    n = len(hypothesis_sents)
    cells = tuple(
        tuple(flat[i * n + j] for j in range(n)) for i in range(len(premise_sents))
    )
    return PairMatrix(premise_sents, hypothesis_sents, cells)


def _score_batch(
    backend: "NliBackend", batch: Sequence[tuple[str, str]]
) -> list[NliDistribution]:
    scored = backend.score_pairs(batch)
    if len(scored) != len(batch):
        raise BackendContractError(
            f"backend returned {len(scored)} distributions for {len(batch)} pairs"
        )
    return list(scored)
