"""Evidence retrieval with the ordered fallback chain.

The question-answer strategy tries the quick-answer box first, then the
related-questions section, then top-k article scraping; a later stage runs
only when every earlier stage yielded nothing. The article strategy skips
straight to article scraping.
"""

from __future__ import annotations

import enum
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from ..datafiles import load_selector_config
from ..errors import NoEvidenceError
from .extract import extract_article, extract_people_also_asked, extract_quick_answer
from .provider import SearchProvider, SerpPage
from .serp import filter_allowed_hits, parse_serp


class EvidenceStage(enum.Enum):
    QUICK_ANSWER = "QuickAnswer"
    PEOPLE_ALSO_ASKED = "PeopleAlsoAsked"
    ARTICLES = "Articles"


class RetrievalStrategy(enum.Enum):
    QUICK_ANSWER_CHAIN = "QuickAnswerChain"
    ARTICLES_ONLY = "ArticlesOnly"


@dataclass(frozen=True)
class EvidenceBundle:
    query: str
    stage: EvidenceStage
    passages: tuple[tuple[str, str], ...]
    scrape_seconds: float

    def __post_init__(self) -> None:
        if not self.passages:
            raise ValueError("evidence bundle needs at least one passage")
        if any(not text.strip() for _, text in self.passages):
            raise ValueError("passage texts must be non-empty")
        if self.stage is EvidenceStage.QUICK_ANSWER and len(self.passages) != 1:
            raise ValueError("quick-answer evidence is exactly one passage")
        if self.scrape_seconds < 0:
            raise ValueError("scrape_seconds must be non-negative")

    @property
    def source_urls(self) -> tuple[str, ...]:
        """Distinct source URLs in first-appearance order."""
        seen: dict[str, None] = {}
        for url, _ in self.passages:
            seen.setdefault(url)
        return tuple(seen)


@dataclass(frozen=True)
class RetrievalConfig:
    k: int = 3
    min_paragraph_tokens: int = 5
    max_workers: int = 4
    selectors: dict[str, Any] = field(default_factory=load_selector_config)


def _article_passages(
    query: str,
    provider: SearchProvider,
    config: RetrievalConfig,
    serp: SerpPage | None,
) -> list[tuple[str, str]]:
    if serp is None:
        return []
    ranked = parse_serp(serp.body, serp.url, config.selectors)
    hits = filter_allowed_hits(ranked, config.k, provider)
    if not hits:
        return []

    def scrape(url: str) -> tuple[str, str] | None:
        body = provider.fetch_page(url)
        if body is None:
            return None
        headings, paragraphs = extract_article(
            body, config.selectors, min_paragraph_tokens=config.min_paragraph_tokens
        )
        text = "\n".join([*headings, *paragraphs]).strip()
        return (url, text) if text else None

    with ThreadPoolExecutor(max_workers=config.max_workers) as pool:
        scraped = list(pool.map(scrape, [hit.url for hit in hits]))
    return [passage for passage in scraped if passage is not None]


def retrieve_evidence(
    query: str,
    strategy: RetrievalStrategy,
    provider: SearchProvider,
    config: RetrievalConfig | None = None,
) -> EvidenceBundle:
    """Run the configured stage chain until one yields at least one passage.

    Raises NoEvidenceError naming the attempted stages when everything is
    empty. Wall-clock scrape time covers the whole call.
    """
    config = config or RetrievalConfig()
    started = time.perf_counter()
    tried: list[str] = []
    serp = provider.get_serp(query)

    def bundle(stage: EvidenceStage, passages: list[tuple[str, str]]) -> EvidenceBundle:
        return EvidenceBundle(
            query=query,
            stage=stage,
            passages=tuple(passages),
            scrape_seconds=time.perf_counter() - started,
        )

    if strategy is RetrievalStrategy.QUICK_ANSWER_CHAIN:
        tried.append(EvidenceStage.QUICK_ANSWER.value)
        if serp is not None:
            answer = extract_quick_answer(serp.body, config.selectors)
            if answer:
                return bundle(EvidenceStage.QUICK_ANSWER, [(serp.url, answer)])

        tried.append(EvidenceStage.PEOPLE_ALSO_ASKED.value)
        if serp is not None:
            pairs = extract_people_also_asked(serp.body, config.selectors)
            if pairs:
                passages = [(serp.url, f"{q} {a}") for q, a in pairs]
                return bundle(EvidenceStage.PEOPLE_ALSO_ASKED, passages)

    tried.append(EvidenceStage.ARTICLES.value)
    passages = _article_passages(query, provider, config, serp)
    if passages:
        return bundle(EvidenceStage.ARTICLES, passages)

    raise NoEvidenceError(query, tuple(tried))


class EvidenceCache:
    """Bundle cache keyed by (query, strategy, k, fixture-set hash) so that
    re-scoring the same claims with a different scorer reuses scrapes."""

    def __init__(self, fixture_hash: str = ""):
        self.fixture_hash = fixture_hash
        self._bundles: dict[tuple[str, str, int, str], EvidenceBundle] = {}
        self._lock = threading.Lock()

    def get_or_retrieve(
        self,
        query: str,
        strategy: RetrievalStrategy,
        provider: SearchProvider,
        config: RetrievalConfig | None = None,
    ) -> EvidenceBundle:
        config = config or RetrievalConfig()
        key = (query, strategy.value, config.k, self.fixture_hash)
        with self._lock:
            cached = self._bundles.get(key)
        if cached is not None:
            return cached
        bundle = retrieve_evidence(query, strategy, provider, config)
        with self._lock:
            return self._bundles.setdefault(key, bundle)
