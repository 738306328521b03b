"""Accessors for the data files shipped inside the package.

Selector sets, stopwords, the lemma table, sentence-splitter abbreviations,
prompt templates and the default convolution scorer config all live under
``veritas/data`` so they can be versioned and swapped without code changes.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Any


def _read_text(relpath: str) -> str:
    root = resources.files("veritas").joinpath("data")
    return root.joinpath(relpath).read_text(encoding="utf-8")


def load_selector_config() -> dict[str, Any]:
    """The versioned selector sets used by search-page and article extraction."""
    return json.loads(_read_text("selectors.json"))


def load_stopwords() -> frozenset[str]:
    words = [w.strip() for w in _read_text("stopwords.txt").splitlines()]
    return frozenset(w for w in words if w and not w.startswith("#"))


def load_lemma_table() -> dict[str, str]:
    table: dict[str, str] = {}
    for line in _read_text("lemmas.tsv").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        inflected, lemma = line.split("\t")
        table[inflected] = lemma
    return table


def load_abbreviations() -> frozenset[str]:
    """Lowercased tokens that end with a period without ending a sentence."""
    words = [w.strip().lower() for w in _read_text("abbreviations.txt").splitlines()]
    return frozenset(w for w in words if w and not w.startswith("#"))


def load_prompt_text(name: str) -> str:
    return _read_text(f"prompts/{name}.txt")


def load_default_conv_config_json() -> dict[str, Any]:
    return json.loads(_read_text("conv_scorer.json"))
