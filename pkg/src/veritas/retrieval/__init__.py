"""Robots-compliant retrieval of search pages and article content."""

from .evidence import (
    EvidenceBundle,
    EvidenceStage,
    RetrievalConfig,
    RetrievalStrategy,
    retrieve_evidence,
)
from .fixtures import FixtureStore, PageFixture, fixture_key
from .provider import FixtureSearchProvider, LiveSearchProvider, SearchProvider, SerpPage
from .robots import RobotsPolicy, fetch_robots, is_allowed, parse_robots
from .serp import SearchHit, filter_allowed_hits, parse_serp, search

__all__ = [
    "EvidenceBundle",
    "EvidenceStage",
    "FixtureSearchProvider",
    "FixtureStore",
    "LiveSearchProvider",
    "PageFixture",
    "RetrievalConfig",
    "RetrievalStrategy",
    "RobotsPolicy",
    "SearchHit",
    "SearchProvider",
    "SerpPage",
    "fetch_robots",
    "filter_allowed_hits",
    "fixture_key",
    "is_allowed",
    "parse_robots",
    "parse_serp",
    "retrieve_evidence",
    "search",
]
