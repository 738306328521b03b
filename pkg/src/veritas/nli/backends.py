"""Scoring backends: wire clients for the inference sidecar plus in-process
deterministic mocks used for hermetic tests.

Two mock flavors exist on purpose. The hash mocks spray deterministic
pseudo-random distributions over the simplex, which is what property tests
want. The lexical mocks score token overlap, so end-to-end fixture runs
produce sensible verdicts without any model weights.
"""

from __future__ import annotations

import hashlib
import re
import time
from typing import Protocol, Sequence, runtime_checkable

import requests

from ..errors import BackendContractError, RetryableError
from .matrix import NliDistribution

_WORD_RE = re.compile(r"[a-z0-9]+")


@runtime_checkable
class NliBackend(Protocol):
    def score_pairs(
        self, pairs: Sequence[tuple[str, str]]
    ) -> list[NliDistribution]: ...


@runtime_checkable
class ConsistencyBackend(Protocol):
    def consistency_score(self, document: str, claim: str) -> float: ...


def _tokens(text: str) -> set[str]:
    return set(_WORD_RE.findall(text.lower()))


def _hash_unit_floats(key: str, count: int) -> list[float]:
    """count floats in (0, 1) derived from a stable digest of key."""
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    out = []
    for i in range(count):
        chunk = digest[i * 8 : (i + 1) * 8]
        out.append((int.from_bytes(chunk, "big") + 1) / (2**64 + 2))
    return out


class HashNliBackend:
    """Seeded hash-based distributions, uniform over the simplex."""

    def __init__(self, seed: int = 0):
        self.seed = seed

    def score_pairs(self, pairs: Sequence[tuple[str, str]]) -> list[NliDistribution]:
        import math

        results = []
        for premise, hypothesis in pairs:
            u = _hash_unit_floats(f"{self.seed}|{premise}\x1f{hypothesis}", 3)
            gammas = [-math.log(x) for x in u]
            total = sum(gammas)
            e, c = gammas[0] / total, gammas[1] / total
            results.append(NliDistribution(e, c, max(0.0, 1.0 - e - c)))
        return results


class LexicalNliBackend:
    """Overlap heuristic: hypothesis tokens covered by the premise sentence
    push mass toward entailment, uncovered tokens toward contradiction.
    """

    def score_pairs(self, pairs: Sequence[tuple[str, str]]) -> list[NliDistribution]:
        results = []
        for premise, hypothesis in pairs:
            hyp = _tokens(hypothesis)
            coverage = len(hyp & _tokens(premise)) / len(hyp) if hyp else 0.0
            entail = 0.05 + 0.90 * coverage
            contradict = 0.05 + 0.36 * (1.0 - coverage)
            results.append(
                NliDistribution(entail, contradict, max(0.0, 1.0 - entail - contradict))
            )
        return results


class HashConsistencyBackend:
    def __init__(self, seed: int = 0):
        self.seed = seed

    def consistency_score(self, document: str, claim: str) -> float:
        return _hash_unit_floats(f"{self.seed}|{document}\x1f{claim}", 1)[0]


class LexicalConsistencyBackend:
    def consistency_score(self, document: str, claim: str) -> float:
        claim_tokens = _tokens(claim)
        if not claim_tokens:
            return 0.5
        coverage = len(claim_tokens & _tokens(document)) / len(claim_tokens)
        return 0.02 + 0.96 * coverage


class _HttpClient:
    def __init__(
        self,
        base_url: str,
        *,
        timeout: float = 30.0,
        retries: int = 2,
        session: requests.Session | None = None,
    ):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self.retries = retries
        self.session = session or requests.Session()

    def post_json(self, path: str, payload: dict) -> dict:
        last_error: Exception | None = None
        for attempt in range(self.retries + 1):
            try:
                response = self.session.post(
                    self.base_url + path, json=payload, timeout=self.timeout
                )
                if response.status_code >= 500:
                    raise RetryableError(
                        f"{path} returned {response.status_code}: {response.text[:200]}"
                    )
                if response.status_code != 200:
                    raise BackendContractError(
                        f"{path} returned {response.status_code}: {response.text[:200]}"
                    )
                return response.json()
            except (requests.ConnectionError, requests.Timeout, RetryableError) as exc:
                last_error = exc
                if attempt < self.retries:
                    time.sleep(0.5 * 2**attempt)
        raise RetryableError(f"backend unreachable after {self.retries + 1} attempts: {last_error}")


class HttpNliBackend(_HttpClient):
    """Client for the sidecar's batch NLI endpoint."""

    def score_pairs(self, pairs: Sequence[tuple[str, str]]) -> list[NliDistribution]:
        payload = {
            "pairs": [{"premise": p, "hypothesis": h} for p, h in pairs]
        }
        body = self.post_json("/v1/nli/batch", payload)
        distributions = body.get("distributions")
        if not isinstance(distributions, list) or len(distributions) != len(pairs):
            raise BackendContractError(
                "nli batch response does not parallel the request"
            )
        out = []
        for dist in distributions:
            try:
                out.append(
                    NliDistribution(
                        float(dist["entail"]),
                        float(dist["contradict"]),
                        float(dist["neutral"]),
                    )
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise BackendContractError(f"invalid distribution payload: {exc}") from exc
        return out


class HttpConsistencyBackend(_HttpClient):
    """Client for the sidecar's document-level consistency endpoint."""

    def consistency_score(self, document: str, claim: str) -> float:
        body = self.post_json("/v1/consistency", {"document": document, "claim": claim})
        try:
            score = float(body["score"])
        except (KeyError, TypeError, ValueError) as exc:
            raise BackendContractError(f"invalid consistency payload: {exc}") from exc
        if not 0.0 <= score <= 1.0:
            raise BackendContractError(f"consistency score {score} outside [0, 1]")
        return score


def make_scoring_backends(
    backend_url: str, *, seed: int = 0
) -> tuple[NliBackend, ConsistencyBackend]:
    """Pick backend implementations from a URL.

    http(s):// URLs talk to the sidecar; "mock:lexical" (or bare "mock:")
    selects the overlap mocks; "mock:hash" selects the seeded hash mocks.
    """
    if backend_url.startswith(("http://", "https://")):
        return HttpNliBackend(backend_url), HttpConsistencyBackend(backend_url)
    if backend_url in ("mock:", "mock:lexical"):
        return LexicalNliBackend(), LexicalConsistencyBackend()
    if backend_url == "mock:hash":
        return HashNliBackend(seed), HashConsistencyBackend(seed)
    raise ValueError(f"unrecognized backend url {backend_url!r}")
