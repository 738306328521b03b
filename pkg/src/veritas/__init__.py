"""Headline verification against web evidence with NLI consistency scoring."""

from .core import (
    BinaryLabel,
    ClaimRecord,
    Pipeline,
    Scorer,
    SixWayLabel,
    VerdictRecord,
    map_liar_label,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryLabel",
    "ClaimRecord",
    "Pipeline",
    "Scorer",
    "SixWayLabel",
    "VerdictRecord",
    "map_liar_label",
    "__version__",
]
