"""Small-language-model calls: question generation and headline perturbation."""

from __future__ import annotations

import re
from typing import Protocol, runtime_checkable

from ..errors import BackendContractError, DegenerateGenerationError, QuestionGenFailure
from ..nli.backends import _HttpClient


@runtime_checkable
class SlmBackend(Protocol):
    def generate(self, task: str, headline: str) -> str: ...


class HttpSlmBackend(_HttpClient):
    """Client for the sidecar's generation endpoint (temperature-0 decoding)."""

    def generate(self, task: str, headline: str) -> str:
        body = self.post_json("/v1/slm/generate", {"task": task, "headline": headline})
        try:
            return str(body["text"])
        except KeyError as exc:
            raise BackendContractError("generation response missing 'text'") from exc


_YEAR_RE = re.compile(r"\b(19|20)(\d)(\d)\b")
_NUMBER_RE = re.compile(r"\d+")


class MockSlmBackend:
    """Deterministic stand-in: template-shaped question, digit-swapped fake."""

    def generate(self, task: str, headline: str) -> str:
        if task == "question":
            return f"Is it true that {headline.rstrip('.?! ')}?"
        if task == "fake_headline":
            return self._perturb(headline)
        raise ValueError(f"unknown task {task!r}")

    @staticmethod
    def _perturb(headline: str) -> str:
        year = _YEAR_RE.search(headline)
        if year:  # swap the decade digit, e.g. 2023 -> 2013
            century, decade, unit = year.group(1, 2, 3)
            flipped = str((int(decade) + 9) % 10)
            return headline[: year.start()] + century + flipped + unit + headline[year.end() :]
        number = _NUMBER_RE.search(headline)
        if number:
            bumped = str(int(number.group(0)) + 1)
            return headline[: number.start()] + bumped + headline[number.end() :]
        return f"{headline.rstrip('. ')}, sources deny"


def first_line(text: str) -> str:
    for line in text.splitlines():
        if line.strip():
            return line.strip()
    return ""


def generate_question(headline: str, slm: SlmBackend) -> str:
    """One verification question for a headline.

    The raw generation is trimmed to the first line containing a question
    mark, cut at that mark. Output without any question mark raises
    QuestionGenFailure so pipelines can fall back to the headline itself.
    """
    if not headline.strip():
        raise ValueError("headline must be non-empty")
    raw = slm.generate("question", headline)
    for line in raw.splitlines():
        if "?" in line:
            return line[: line.index("?") + 1].strip()
    raise QuestionGenFailure(f"no question in SLM output: {raw[:120]!r}")


def generate_fake_headline(headline: str, slm: SlmBackend) -> str:
    """A one-line perturbed headline, guaranteed distinct from the input.

    An SLM that echoes its input gets one more chance before the call fails
    with DegenerateGenerationError.
    """
    if not headline.strip():
        raise ValueError("headline must be non-empty")
    reference = headline.strip().lower()
    for _ in range(2):
        candidate = first_line(slm.generate("fake_headline", headline))
        if candidate and candidate.strip().lower() != reference:
            return candidate
    raise DegenerateGenerationError(
        f"SLM kept echoing the input headline: {headline!r}"
    )
