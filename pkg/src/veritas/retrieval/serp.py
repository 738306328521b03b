"""Search-hit extraction from result pages, with robots filtering."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any
from urllib.parse import urljoin, urlparse

from ..datafiles import load_selector_config
from ..textutil import normalize_whitespace
from .htmldoc import parse_html, select
from .provider import SearchProvider
from .robots import is_allowed


@dataclass(frozen=True)
class SearchHit:
    rank: int
    url: str
    title: str

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError("ranks start at 1")


def parse_serp(
    body: bytes | str, base_url: str, selectors: dict[str, Any] | None = None
) -> list[SearchHit]:
    """Ranked result links in document order, deduplicated by URL."""
    config = selectors or load_selector_config()
    doc = parse_html(body)
    hits: list[SearchHit] = []
    seen: set[str] = set()
    for selector in config["serp_result"]:
        for anchor in select(doc, selector):
            href = anchor.attrs.get("href", "").strip()
            if not href or href.startswith(("#", "javascript:")):
                continue
            url = urljoin(base_url, href)
            if url in seen:
                continue
            seen.add(url)
            title = ""
            for title_selector in config["serp_result_title"]:
                for node in select(anchor, title_selector):
                    title = normalize_whitespace(node.text())
                    if title:
                        break
                if title:
                    break
            if not title:
                title = normalize_whitespace(anchor.text())
            hits.append(SearchHit(rank=len(hits) + 1, url=url, title=title))
        if hits:
            break
    return hits


def filter_allowed_hits(
    ranked: list[SearchHit], k: int, provider: SearchProvider
) -> list[SearchHit]:
    """Drop robots-disallowed URLs post-ranking, truncate to k, renumber from 1."""
    allowed: list[SearchHit] = []
    for hit in ranked:
        parsed = urlparse(hit.url)
        path = parsed.path or "/"
        if parsed.query:
            path = f"{path}?{parsed.query}"
        policy = provider.robots_policy(hit.url)
        if not is_allowed(policy, path, provider.user_agent):
            continue
        allowed.append(SearchHit(rank=len(allowed) + 1, url=hit.url, title=hit.title))
        if len(allowed) == k:
            break
    return allowed


def search(
    query: str,
    k: int,
    provider: SearchProvider,
    *,
    selectors: dict[str, Any] | None = None,
) -> list[SearchHit]:
    """Top-k result links for a query, robots-disallowed URLs filtered out
    post-ranking and the remainder renumbered contiguously from 1.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    serp = provider.get_serp(query)
    if serp is None:
        return []
    ranked = parse_serp(serp.body, serp.url, selectors)
    return filter_allowed_hits(ranked, k, provider)
