"""Prompt templates for question generation and fake-headline generation."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..datafiles import load_prompt_text

PLACEHOLDER = "{headline}"


class PromptName(enum.Enum):
    QUESTION_GEN = "question_gen"
    FAKE_HEADLINE_GEN = "fake_headline_gen"


@dataclass(frozen=True)
class PromptTemplate:
    name: PromptName
    text: str

    def __post_init__(self) -> None:
        if self.text.count(PLACEHOLDER) != 1:
            raise ValueError(
                f"prompt {self.name.value} must contain exactly one {PLACEHOLDER}"
            )

    def render(self, headline: str) -> str:
        return self.text.replace(PLACEHOLDER, headline)


def load_prompt(name: PromptName) -> PromptTemplate:
    return PromptTemplate(name=name, text=load_prompt_text(name.value))
