"""Rule-based sentence segmentation with an abbreviation exception list.

Deterministic and dependency-free; tuned for news prose. A period only ends a
sentence when the token carrying it is not a known abbreviation and the next
visible character does not start a lowercase continuation. Question and
exclamation marks always end a sentence.
"""

from __future__ import annotations

import re

from ..datafiles import load_abbreviations

_ABBREVIATIONS: frozenset[str] | None = None

# Abbreviations that collide with ordinary words ("no", "max"); they only
# suppress a boundary when a digit follows, as in "No. 5" or "approx. 40".
_NUMERIC_CONTEXT_ABBREVIATIONS = frozenset(
    "no nos fig figs vol pp ed est approx min max".split()
)

# A run of terminal punctuation, optional closing quotes/brackets, then
# whitespace or end of text.
_BOUNDARY_RE = re.compile(r"[.!?]+[\"'’”)\]]*(?=\s|$)")


def _abbreviations() -> frozenset[str]:
    global _ABBREVIATIONS
    if _ABBREVIATIONS is None:
        _ABBREVIATIONS = load_abbreviations()
    return _ABBREVIATIONS


def _token_before(text: str, end: int) -> str:
    """The whitespace-delimited token whose last character is at end-1."""
    start = end
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    return text[start:end]


def _is_boundary(text: str, match: re.Match) -> bool:
    punct = match.group(0)
    if "?" in punct or "!" in punct:
        return True
    token = _token_before(text, match.end())
    # Strip closing quotes/brackets, then the terminal periods.
    token = token.rstrip("\"'’”)]").rstrip(".").lower()
    rest = text[match.end():].lstrip()
    if token in _abbreviations():
        return False
    if token in _NUMERIC_CONTEXT_ABBREVIATIONS and rest[:1].isdigit():
        return False
    if rest and rest[0].islower():
        return False
    return True


def split_sentences(text: str) -> list[str]:
    """Split text into sentences, keeping terminal punctuation with each.

    The concatenation of the returned segments equals the input modulo
    whitespace. Text with no sentence boundary comes back as a single segment.
    """
    if not text.strip():
        raise ValueError("cannot split empty text")
    sentences: list[str] = []
    start = 0
    for match in _BOUNDARY_RE.finditer(text):
        if not _is_boundary(text, match):
            continue
        segment = text[start : match.end()].strip()
        if segment:
            sentences.append(segment)
        start = match.end()
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences
