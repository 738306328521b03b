"""Polite live fetching: robots gate, per-host serialization, rate limiting.

Every page request goes through `get`, which refuses robots-disallowed paths
outright, so no network request can ever reach a forbidden URL. The robots
file itself is fetched through the same rate limiter but is exempt from the
gate, as the exclusion standard requires.
"""

from __future__ import annotations

import os
import threading
import time
from dataclasses import dataclass
from urllib.parse import urlparse

import requests

from ..errors import RetryableError, RobotsDisallowedError
from .robots import RobotsPolicy, fetch_robots, is_allowed

DEFAULT_USER_AGENT = "veritas-bot/0.1"


def configured_user_agent() -> str:
    return os.environ.get("VERITAS_USER_AGENT", DEFAULT_USER_AGENT)


@dataclass(frozen=True)
class FetchResult:
    url: str
    status: int
    body: bytes


class PoliteFetcher:
    """Thread-safe fetcher enforcing one in-flight request per host and a
    minimum inter-request delay (default 500 ms), with bounded retries.
    """

    def __init__(
        self,
        *,
        user_agent: str | None = None,
        timeout: float = 10.0,
        retries: int = 2,
        min_delay: float = 0.5,
        session: requests.Session | None = None,
    ):
        self.user_agent = user_agent or configured_user_agent()
        self.timeout = timeout
        self.retries = retries
        self.min_delay = min_delay
        self.session = session or requests.Session()
        self._host_locks: dict[str, threading.Lock] = {}
        self._last_request: dict[str, float] = {}
        self._robots_cache: dict[str, RobotsPolicy] = {}
        self._registry_lock = threading.Lock()

    def _host_lock(self, host: str) -> threading.Lock:
        with self._registry_lock:
            return self._host_locks.setdefault(host, threading.Lock())

    def _throttled_request(self, url: str) -> requests.Response:
        host = urlparse(url).netloc
        with self._host_lock(host):
            elapsed = time.monotonic() - self._last_request.get(host, -1e9)
            if elapsed < self.min_delay:
                time.sleep(self.min_delay - elapsed)
            try:
                return self.session.get(
                    url,
                    headers={"User-Agent": self.user_agent},
                    timeout=self.timeout,
                )
            finally:
                self._last_request[host] = time.monotonic()

    def _get_with_retries(self, url: str) -> FetchResult:
        last_error: Exception | None = None
        for attempt in range(self.retries + 1):
            try:
                response = self._throttled_request(url)
                if response.status_code >= 500:
                    raise RetryableError(f"{url} returned {response.status_code}")
                return FetchResult(url, response.status_code, response.content)
            except (requests.ConnectionError, requests.Timeout, RetryableError) as exc:
                last_error = exc
                if attempt < self.retries:
                    time.sleep(min(2.0, 0.2 * 2**attempt))
        raise RetryableError(f"gave up on {url} after {self.retries + 1} attempts: {last_error}")

    def robots_policy(self, url: str) -> RobotsPolicy:
        parsed = urlparse(url)
        cache_key = f"{parsed.scheme}://{parsed.netloc}"
        with self._registry_lock:
            cached = self._robots_cache.get(cache_key)
        if cached is not None:
            return cached
        policy = fetch_robots(
            parsed.netloc,
            lambda robots_url: self._raw_status_body(robots_url),
            scheme=parsed.scheme or "https",
        )
        with self._registry_lock:
            self._robots_cache[cache_key] = policy
        return policy

    def _raw_status_body(self, url: str) -> tuple[int, bytes]:
        result = self._get_with_retries(url)
        return result.status, result.body

    def get(self, url: str) -> FetchResult:
        """Robots-gated fetch. Raises RobotsDisallowedError rather than touch
        a disallowed path; raises RetryableError when retries are exhausted.
        """
        parsed = urlparse(url)
        path = parsed.path or "/"
        if parsed.query:
            path = f"{path}?{parsed.query}"
        policy = self.robots_policy(url)
        if not is_allowed(policy, path, self.user_agent):
            raise RobotsDisallowedError(f"{url} is disallowed for {self.user_agent}")
        return self._get_with_retries(url)
