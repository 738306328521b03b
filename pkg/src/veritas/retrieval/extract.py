"""Content extraction: quick-answer box, related-questions section, article text.

All extractors are pure functions over markup; selector sets come from the
versioned configuration file so they can track page-layout drift without code
changes.
"""

from __future__ import annotations

from typing import Any

from ..datafiles import load_selector_config
from ..textutil import normalize_whitespace
from .htmldoc import HtmlNode, parse_html, select


def extract_quick_answer(
    body: bytes | str, selectors: dict[str, Any] | None = None
) -> str | None:
    """Visible text of the direct-answer box, or None when no selector matches."""
    config = selectors or load_selector_config()
    doc = parse_html(body)
    for selector in config["quick_answer"]:
        for node in select(doc, selector):
            text = normalize_whitespace(node.text())
            if text:
                return text
    return None


def extract_people_also_asked(
    body: bytes | str, selectors: dict[str, Any] | None = None
) -> list[tuple[str, str]]:
    """(question, answer) pairs in page order; entries with empty answers dropped."""
    config = selectors or load_selector_config()
    doc = parse_html(body)
    pairs: list[tuple[str, str]] = []
    for item_selector in config["paa_item"]:
        items = select(doc, item_selector)
        if not items:
            continue
        for item in items:
            question = _first_text(item, config["paa_question"])
            answer = _first_text(item, config["paa_answer"])
            if question and answer:
                pairs.append((question, answer))
        break
    return pairs


def _first_text(node: HtmlNode, selectors: list[str]) -> str:
    for selector in selectors:
        for match in select(node, selector):
            text = normalize_whitespace(match.text())
            if text:
                return text
    return ""


def extract_article(
    body: bytes | str,
    selectors: dict[str, Any] | None = None,
    *,
    min_paragraph_tokens: int = 5,
) -> tuple[list[str], list[str]]:
    """Headings and paragraphs in document order.

    Content inside boilerplate containers (nav, footer, ...) is skipped, and
    paragraphs shorter than min_paragraph_tokens tokens are treated as chrome
    and dropped.
    """
    config = selectors or load_selector_config()
    doc = parse_html(body)
    heading_tags = set(config["article_headings"])
    paragraph_tags = set(config["article_paragraphs"])
    boilerplate = set(config["boilerplate_containers"])

    headings: list[str] = []
    paragraphs: list[str] = []

    def walk(node: HtmlNode) -> None:
        for child in node.children:
            if not isinstance(child, HtmlNode):
                continue
            if child.tag in boilerplate:
                continue
            if child.tag in heading_tags:
                text = normalize_whitespace(child.text())
                if text:
                    headings.append(text)
            elif child.tag in paragraph_tags:
                text = normalize_whitespace(child.text())
                if text and len(text.split()) >= min_paragraph_tokens:
                    paragraphs.append(text)
                continue  # paragraphs do not nest further content of interest
            walk(child)

    walk(doc)
    return headings, paragraphs
