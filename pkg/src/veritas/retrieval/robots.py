"""Robots exclusion parsing and permission checks.

Semantics follow the modern exclusion standard: the applicable group is the
one whose user-agent token is the longest match for the caller's agent ("*"
matches anything at lowest precedence), the applicable rule is the one with
the longest matching path, and Allow beats Disallow at equal length. Rules
keep file order inside a group; a missing, empty, or erroring robots file
means allow-all.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from typing import Callable


@dataclass(frozen=True)
class RobotsRule:
    allow: bool
    path: str

    def match_length(self, path: str) -> int | None:
        """Length of the rule pattern if it matches the path, else None.

        Patterns may contain '*' wildcards and a '$' end anchor; pattern
        length (wildcards included) is the specificity measure.
        """
        pattern = self.path
        anchored = pattern.endswith("$")
        if anchored:
            pattern = pattern[:-1]
        regex = ".*".join(re.escape(piece) for piece in pattern.split("*"))
        regex = "^" + regex + ("$" if anchored else "")
        if re.match(regex, path):
            return len(self.path)
        return None


@dataclass(frozen=True)
class RobotsGroup:
    agents: tuple[str, ...]
    rules: tuple[RobotsRule, ...]

    def agent_match_length(self, agent: str) -> int | None:
        """Specificity of this group for the agent: longest matching token."""
        token = agent.split("/")[0].strip().lower()
        best: int | None = None
        for pattern in self.agents:
            if pattern == "*":
                best = max(best or 0, 0)
            elif pattern.lower() in token:
                best = max(best or 0, len(pattern))
        return best


@dataclass(frozen=True)
class RobotsPolicy:
    host: str
    groups: tuple[RobotsGroup, ...] = ()
    fetched_at: float = field(default_factory=time.time)
    warning: str | None = None

    def rules_for(self, agent: str) -> tuple[RobotsRule, ...]:
        scored = [
            (length, group)
            for group in self.groups
            if (length := group.agent_match_length(agent)) is not None
        ]
        if not scored:
            return ()
        best = max(length for length, _ in scored)
        merged: list[RobotsRule] = []
        for length, group in scored:
            if length == best:
                merged.extend(group.rules)
        return tuple(merged)


def parse_robots(host: str, body: str, *, warning: str | None = None) -> RobotsPolicy:
    """Parse a robots.txt body. Malformed lines are skipped, never fatal."""
    groups: list[RobotsGroup] = []
    agents: list[str] = []
    rules: list[RobotsRule] = []
    collecting_agents = True

    def flush() -> None:
        nonlocal agents, rules
        if agents:
            groups.append(RobotsGroup(tuple(agents), tuple(rules)))
        agents, rules = [], []

    for raw_line in body.splitlines():
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            continue  # malformed: skip
        name, _, value = line.partition(":")
        name = name.strip().lower()
        value = value.strip()
        if name == "user-agent":
            if not value:
                continue
            if not collecting_agents:
                flush()
                collecting_agents = True
            agents.append(value)
        elif name in ("allow", "disallow"):
            collecting_agents = False
            if not agents:
                continue  # rule before any user-agent line: skip
            if not value:
                continue  # empty path means "match nothing"
            if not value.startswith("/") and not value.startswith("*"):
                value = "/" + value
            rules.append(RobotsRule(allow=(name == "allow"), path=value))
        # Other directives (crawl-delay, sitemap, ...) are ignored.
    flush()
    return RobotsPolicy(host=host, groups=tuple(groups), warning=warning)


def fetch_robots(
    host: str,
    page_getter: Callable[[str], tuple[int, bytes]],
    *,
    scheme: str = "https",
) -> RobotsPolicy:
    """Fetch and parse a host's robots.txt.

    On transport failure or a 5xx response the policy is allow-all with a
    warning flag; a 4xx is also allow-all, per common crawler convention.
    """
    url = f"{scheme}://{host}/robots.txt"
    try:
        status, body = page_getter(url)
    except Exception as exc:
        return RobotsPolicy(host=host, warning=f"robots fetch failed: {exc}")
    if status >= 500:
        return RobotsPolicy(host=host, warning=f"robots fetch returned {status}")
    if status >= 400:
        return RobotsPolicy(host=host)
    return parse_robots(host, body.decode("utf-8", errors="replace"))


def is_allowed(policy: RobotsPolicy, path: str, agent: str) -> bool:
    """Longest-path-match verdict for one path; no matching rule means allowed."""
    if not path.startswith("/"):
        raise ValueError(f"path must begin with '/': {path!r}")
    rules = policy.rules_for(agent)
    best_length = -1
    best_allow = True
    for rule in rules:
        length = rule.match_length(path)
        if length is None:
            continue
        if length > best_length:
            best_length, best_allow = length, rule.allow
        elif length == best_length and rule.allow:
            best_allow = True  # Allow beats Disallow on equal length
    return best_allow
