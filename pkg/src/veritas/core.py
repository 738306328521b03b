"""Shared domain types: claims, labels, verdicts.

Everything here is an immutable value object, safe to share across threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

from .errors import DatasetFormatError

if TYPE_CHECKING:  # pragma: no cover - import cycle guard, typing only
    from .pipelines.runner import StageTimings
    from .retrieval.evidence import EvidenceBundle


class SixWayLabel(enum.Enum):
    """The six truthfulness grades used by the training corpus."""

    TRUE = "true"
    MOSTLY_TRUE = "mostly-true"
    HALF_TRUE = "half-true"
    BARELY_TRUE = "barely-true"
    FALSE = "false"
    PANTS_FIRE = "pants-fire"


@enum.unique
class BinaryLabel(enum.Enum):
    """Binary reliability outcome. Reliable orders above Unreliable for tie-breaks."""

    RELIABLE = "Reliable"
    UNRELIABLE = "Unreliable"

    def __lt__(self, other: "BinaryLabel") -> bool:
        if not isinstance(other, BinaryLabel):
            return NotImplemented
        return _LABEL_ORDER[self] < _LABEL_ORDER[other]

    def __le__(self, other: "BinaryLabel") -> bool:
        if not isinstance(other, BinaryLabel):
            return NotImplemented
        return _LABEL_ORDER[self] <= _LABEL_ORDER[other]

    def __gt__(self, other: "BinaryLabel") -> bool:
        if not isinstance(other, BinaryLabel):
            return NotImplemented
        return _LABEL_ORDER[self] > _LABEL_ORDER[other]

    def __ge__(self, other: "BinaryLabel") -> bool:
        if not isinstance(other, BinaryLabel):
            return NotImplemented
        return _LABEL_ORDER[self] >= _LABEL_ORDER[other]

    def as_report_string(self) -> str:
        """Reports serialize reliability as "true"/"false"."""
        return "true" if self is BinaryLabel.RELIABLE else "false"


_LABEL_ORDER = {BinaryLabel.UNRELIABLE: 0, BinaryLabel.RELIABLE: 1}

_RELIABLE_GRADES = frozenset(
    {SixWayLabel.TRUE, SixWayLabel.MOSTLY_TRUE, SixWayLabel.HALF_TRUE}
)


def normalize_label_string(raw: str) -> str:
    """Lowercase and re-hyphenate a label so file-casing variants all parse."""
    return raw.strip().lower().replace("_", "-").replace(" ", "-")


def parse_six_way_label(raw: str, *, context: str = "") -> SixWayLabel:
    """Parse a raw label string, raising a dataset-format error naming the row."""
    normalized = normalize_label_string(raw)
    # "pants-on-fire" appears in some dumps of the corpus; fold it in.
    if normalized == "pants-on-fire":
        normalized = "pants-fire"
    for label in SixWayLabel:
        if label.value == normalized:
            return label
    where = f" ({context})" if context else ""
    raise DatasetFormatError(f"unrecognized truthfulness label {raw!r}{where}")


def map_liar_label(raw: SixWayLabel) -> BinaryLabel:
    """Collapse the six truthfulness grades to a binary outcome.

    true / mostly-true / half-true count as Reliable; barely-true / false /
    pants-fire count as Unreliable. Total over the six-value alphabet.
    """
    return BinaryLabel.RELIABLE if raw in _RELIABLE_GRADES else BinaryLabel.UNRELIABLE


def parse_binary_label(raw: str, *, context: str = "") -> BinaryLabel:
    """Parse "true"/"false" (any casing) or 1/0 into a BinaryLabel."""
    normalized = raw.strip().lower()
    if normalized in ("true", "1", "reliable"):
        return BinaryLabel.RELIABLE
    if normalized in ("false", "0", "unreliable"):
        return BinaryLabel.UNRELIABLE
    where = f" ({context})" if context else ""
    raise DatasetFormatError(f"unrecognized binary label {raw!r}{where}")


@dataclass(frozen=True)
class ClaimRecord:
    """A candidate statement plus its ground truth and provenance metadata."""

    id: str
    text: str
    label: Optional[BinaryLabel] = None
    raw_label: Optional[SixWayLabel] = None
    source: Optional[str] = None
    domain_tag: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.text.strip():
            raise ValueError(f"claim {self.id!r} has empty text")
        if self.raw_label is not None and self.label is not None:
            if self.label is not map_liar_label(self.raw_label):
                raise ValueError(
                    f"claim {self.id!r}: label {self.label} conflicts with "
                    f"raw label {self.raw_label}"
                )


class Pipeline(enum.Enum):
    """Which verification pipeline produced a verdict."""

    ARTICLE = "article"
    QUESTION_ANSWER = "qa"
    SLM_MISTRAL = "slm-mistral"
    SLM_PHI3 = "slm-phi3"


class Scorer(enum.Enum):
    """Which consistency scorer produced a verdict."""

    FACTCC = "factcc"
    SUMMAC_ZS = "summac-zs"
    SUMMAC_CONV = "summac-conv"


#: Inclusive score range each scorer is allowed to emit.
SCORER_RANGES: dict[Scorer, tuple[float, float]] = {
    Scorer.FACTCC: (0.0, 1.0),
    Scorer.SUMMAC_ZS: (-1.0, 1.0),
    Scorer.SUMMAC_CONV: (-1.0, 1.0),
}


@dataclass(frozen=True)
class VerdictRecord:
    """Final pipeline output for one claim: score, threshold and binary verdict."""

    claim_id: str
    pipeline: Pipeline
    scorer: Scorer
    score: float
    threshold: float
    verdict: BinaryLabel
    evidence: "EvidenceBundle"
    timings: "StageTimings"

    def __post_init__(self) -> None:
        lo, hi = SCORER_RANGES[self.scorer]
        if not (lo <= self.score <= hi):
            raise ValueError(
                f"score {self.score} outside {self.scorer.value} range [{lo}, {hi}]"
            )
        expected = (
            BinaryLabel.RELIABLE
            if self.score >= self.threshold
            else BinaryLabel.UNRELIABLE
        )
        if self.verdict is not expected:
            raise ValueError(
                f"verdict {self.verdict} inconsistent with score {self.score} "
                f"vs threshold {self.threshold}"
            )
