"""Small text helpers shared by retrieval and scoring."""

from __future__ import annotations

import re
import unicodedata

_WS_RE = re.compile(r"\s+")


def normalize_whitespace(text: str) -> str:
    """Collapse runs of whitespace, strip control characters, keep case.

    Case is preserved deliberately: downstream NLI scorers are case-sensitive.
    """
    cleaned = "".join(
        ch for ch in text if ch in ("\n", "\t", " ") or unicodedata.category(ch)[0] != "C"
    )
    return _WS_RE.sub(" ", cleaned).strip()


def normalize_query(query: str) -> str:
    """Canonical form used to key recorded search pages."""
    return _WS_RE.sub(" ", query).strip().lower()
