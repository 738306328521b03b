"""Search providers: live search-page scraping or recorded-fixture replay."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, runtime_checkable
from urllib.parse import quote_plus, urlparse

from ..errors import RobotsDisallowedError
from .fetcher import PoliteFetcher
from .fixtures import FixtureStore
from .robots import RobotsPolicy, parse_robots


@dataclass(frozen=True)
class SerpPage:
    """A search-results document for one query."""

    url: str
    body: bytes


@runtime_checkable
class SearchProvider(Protocol):
    user_agent: str

    def get_serp(self, query: str) -> SerpPage | None: ...

    def fetch_page(self, url: str) -> bytes | None: ...

    def robots_policy(self, url: str) -> RobotsPolicy: ...


class FixtureSearchProvider:
    """Replays recorded pages; issues no network requests at all."""

    def __init__(self, store: FixtureStore, *, user_agent: str = "veritas-bot/0.1"):
        self.store = store
        self.user_agent = user_agent

    def get_serp(self, query: str) -> SerpPage | None:
        fixture = self.store.get_serp(query)
        if fixture is None:
            return None
        return SerpPage(url=fixture.url, body=fixture.body)

    def fetch_page(self, url: str) -> bytes | None:
        fixture = self.store.get_page(url)
        return fixture.body if fixture else None

    def robots_policy(self, url: str) -> RobotsPolicy:
        parsed = urlparse(url)
        robots_url = f"{parsed.scheme}://{parsed.netloc}/robots.txt"
        fixture = self.store.get_page(robots_url)
        if fixture is None:
            return RobotsPolicy(host=parsed.netloc)
        return parse_robots(
            parsed.netloc, fixture.body.decode("utf-8", errors="replace")
        )


class LiveSearchProvider:
    """Fetches search pages and articles live through the polite fetcher.

    The robots gate applies to every fetch, the search page included; if the
    configured engine disallows its results path for this agent, the fetch is
    refused rather than silently violating the policy.
    """

    def __init__(
        self,
        fetcher: PoliteFetcher | None = None,
        *,
        serp_url_template: str = "https://www.google.com/search?q={query}&num=10",
        record_to: FixtureStore | None = None,
    ):
        self.fetcher = fetcher or PoliteFetcher()
        self.serp_url_template = serp_url_template
        self.record_to = record_to

    @property
    def user_agent(self) -> str:
        return self.fetcher.user_agent

    def get_serp(self, query: str) -> SerpPage | None:
        url = self.serp_url_template.format(query=quote_plus(query))
        result = self.fetcher.get(url)
        if result.status != 200:
            return None
        if self.record_to is not None:
            self.record_to.put_serp(query, url, result.body)
        return SerpPage(url=url, body=result.body)

    def fetch_page(self, url: str) -> bytes | None:
        try:
            result = self.fetcher.get(url)
        except RobotsDisallowedError:
            return None
        if result.status != 200:
            return None
        if self.record_to is not None:
            self.record_to.put_page(url, result.body)
        return result.body

    def robots_policy(self, url: str) -> RobotsPolicy:
        return self.fetcher.robots_policy(url)
