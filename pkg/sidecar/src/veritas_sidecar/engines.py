"""Inference engines behind the HTTP surface.

MockEngine answers from seeded hashes (uniform Dirichlet draws on the
simplex) so the verification engine's property tests see arbitrary but
stable distributions. TransformersEngine loads the real checkpoints lazily
and decodes at temperature 0 so identical requests yield identical bodies.

Prompt templates come from the verification package's data files, so the
server renders exactly the prompts that package documents.
"""

from __future__ import annotations

import hashlib
import math
import re
import threading
from typing import Protocol, Sequence

from veritas.datafiles import load_prompt_text

from .config import SidecarConfig

Triple = tuple[float, float, float]

PROMPT_FILES = {"question": "question_gen", "fake_headline": "fake_headline_gen"}


def render_prompt(task: str, headline: str) -> str:
    template = load_prompt_text(PROMPT_FILES[task])
    return template.replace("{headline}", headline)


class InferenceEngine(Protocol):
    def ready(self) -> bool: ...

    def nli_batch(self, pairs: Sequence[tuple[str, str]]) -> list[Triple]: ...

    def consistency(self, document: str, claim: str) -> float: ...

    def generate(self, task: str, headline: str) -> str: ...


def _hash_floats(key: str, count: int) -> list[float]:
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return [
        (int.from_bytes(digest[i * 8 : (i + 1) * 8], "big") + 1) / (2**64 + 2)
        for i in range(count)
    ]


_YEAR_RE = re.compile(r"\b(19|20)(\d)(\d)\b")
_NUMBER_RE = re.compile(r"\d+")


class MockEngine:
    """Deterministic hash-based engine; no weights, instantly ready."""

    def __init__(self, seed: int = 0):
        self.seed = seed

    def ready(self) -> bool:
        return True

    def nli_batch(self, pairs: Sequence[tuple[str, str]]) -> list[Triple]:
        triples: list[Triple] = []
        for premise, hypothesis in pairs:
            u = _hash_floats(f"{self.seed}|{premise}\x1f{hypothesis}", 3)
            gammas = [-math.log(x) for x in u]
            total = sum(gammas)
            triples.append((gammas[0] / total, gammas[1] / total, gammas[2] / total))
        return triples

    def consistency(self, document: str, claim: str) -> float:
        return _hash_floats(f"{self.seed}|{document}\x1f{claim}", 1)[0]

    def generate(self, task: str, headline: str) -> str:
        render_prompt(task, headline)  # template must exist and render
        if task == "question":
            return f"Is it true that {headline.rstrip('.?! ')}?"
        year = _YEAR_RE.search(headline)
        if year:
            century, decade, unit = year.group(1, 2, 3)
            flipped = str((int(decade) + 9) % 10)
            return headline[: year.start()] + century + flipped + unit + headline[year.end() :]
        number = _NUMBER_RE.search(headline)
        if number:
            return (
                headline[: number.start()]
                + str(int(number.group(0)) + 1)
                + headline[number.end() :]
            )
        return f"{headline.rstrip('. ')}, sources deny"


_ENTAIL_ALIASES = ("entail",)
_CONTRADICT_ALIASES = ("contradict", "refut")
_CONSISTENT_LABELS = ("correct", "consistent", "label_0")


class TransformersEngine:
    """Real checkpoints behind the same interface.

    Loading happens in a background thread; endpoints return 503 until
    ready() turns true. All decoding is greedy (temperature 0).
    """

    def __init__(self, config: SidecarConfig):
        self.config = config
        self._lock = threading.Lock()
        self._ready = False
        self._error: str | None = None
        self._nli = None
        self._consistency = None
        self._slm = None
        self._slm_tokenizer = None

    def start_loading(self) -> None:
        threading.Thread(target=self._load, daemon=True).start()

    def load_error(self) -> str | None:
        return self._error

    def _load(self) -> None:
        try:
            from transformers import (
                AutoModelForCausalLM,
                AutoModelForSequenceClassification,
                AutoTokenizer,
                pipeline,
            )

            self._nli = pipeline(
                "text-classification",
                model=self.config.nli_model,
                device=-1 if self.config.device == "cpu" else self.config.device,
                top_k=None,
            )
            self._consistency = pipeline(
                "text-classification",
                model=AutoModelForSequenceClassification.from_pretrained(
                    self.config.consistency_model
                ),
                tokenizer=AutoTokenizer.from_pretrained(self.config.consistency_model),
                device=-1 if self.config.device == "cpu" else self.config.device,
                top_k=None,
            )
            self._slm_tokenizer = AutoTokenizer.from_pretrained(self.config.slm_model)
            self._slm = AutoModelForCausalLM.from_pretrained(self.config.slm_model)
            with self._lock:
                self._ready = True
        except Exception as exc:  # surface via /healthz rather than crash
            with self._lock:
                self._error = f"{type(exc).__name__}: {exc}"

    def ready(self) -> bool:
        with self._lock:
            return self._ready

    def nli_batch(self, pairs: Sequence[tuple[str, str]]) -> list[Triple]:
        inputs = [{"text": p, "text_pair": h} for p, h in pairs]
        outputs = self._nli(inputs, truncation=True, max_length=512)
        triples = []
        for scored in outputs:
            entail = contradict = neutral = 0.0
            for item in scored:
                label = item["label"].lower()
                if any(alias in label for alias in _ENTAIL_ALIASES):
                    entail = float(item["score"])
                elif any(alias in label for alias in _CONTRADICT_ALIASES):
                    contradict = float(item["score"])
                else:
                    neutral = float(item["score"])
            triples.append((entail, contradict, neutral))
        return triples

    def consistency(self, document: str, claim: str) -> float:
        scored = self._consistency(
            {"text": document, "text_pair": claim}, truncation=True, max_length=512
        )
        for item in scored:
            if item["label"].lower() in _CONSISTENT_LABELS:
                return float(item["score"])
        # Binary head without a recognized label name: take the complement
        # of whatever label came back first.
        return 1.0 - float(scored[0]["score"])

    def generate(self, task: str, headline: str) -> str:
        import torch

        prompt = render_prompt(task, headline)
        messages = [{"role": "user", "content": prompt}]
        input_ids = self._slm_tokenizer.apply_chat_template(
            messages, add_generation_prompt=True, return_tensors="pt"
        )
        with torch.no_grad():
            output = self._slm.generate(
                input_ids,
                do_sample=False,
                temperature=None,
                top_p=None,
                max_new_tokens=self.config.max_new_tokens,
                pad_token_id=self._slm_tokenizer.eos_token_id,
            )
        text = self._slm_tokenizer.decode(
            output[0][input_ids.shape[1] :], skip_special_tokens=True
        )
        for line in text.splitlines():
            if line.strip():
                return line.strip()
        return text.strip()


def make_engine(config: SidecarConfig) -> InferenceEngine:
    if config.mock:
        return MockEngine(seed=config.seed)
    engine = TransformersEngine(config)
    engine.start_loading()
    return engine
