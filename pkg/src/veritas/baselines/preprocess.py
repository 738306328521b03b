"""Token pipeline: lowercase, alphabetic filter, stopword removal, lemma lookup."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from ..datafiles import load_lemma_table, load_stopwords

_TOKEN_RE = re.compile(r"\w+")


@dataclass(frozen=True)
class Preprocessor:
    """Carries the stopword set and lemma table so they load once."""

    stopwords: frozenset[str] = field(default_factory=load_stopwords)
    lemmas: dict[str, str] = field(default_factory=load_lemma_table)

    def __call__(self, text: str) -> list[str]:
        return preprocess(text, self.stopwords, self.lemmas)

    def run_corpus(self, texts: Iterable[str]) -> list[list[str]]:
        return [self(text) for text in texts]


def preprocess(text: str, stopwords: frozenset[str], lemmas: dict[str, str]) -> list[str]:
    """Order-preserving token stream: lowercased, non-alphabetic tokens and
    stopwords dropped, remaining tokens mapped through the inflection table
    (identity when absent)."""
    tokens = _TOKEN_RE.findall(text.lower())
    return [
        lemmas.get(token, token)
        for token in tokens
        if token.isalpha() and token not in stopwords
    ]
