"""Error-tolerant HTML tree with the small CSS-selector subset the extraction
configuration needs: tag, .class, #id, [attr] / [attr=value], and descendant
combinators. Built on html.parser so the package carries no parser dependency.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from html.parser import HTMLParser
from typing import Iterator, Optional

VOID_ELEMENTS = frozenset(
    "area base br col embed hr img input link meta param source track wbr".split()
)

# Opening one of these implicitly closes an open <p>; <li>, <tr>, <td>, <th>
# close their own kind. Keeps sloppy news markup from nesting paragraphs.
_P_CLOSERS = frozenset(
    "p div ul ol table h1 h2 h3 h4 h5 h6 blockquote section article nav aside "
    "footer header form pre".split()
)
_SELF_CLOSERS = {"li": {"li"}, "tr": {"tr"}, "td": {"td", "th"}, "th": {"td", "th"}}


@dataclass
class HtmlNode:
    tag: str
    attrs: dict[str, str] = field(default_factory=dict)
    children: list["HtmlNode | str"] = field(default_factory=list)
    parent: Optional["HtmlNode"] = None

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"<HtmlNode {self.tag} attrs={self.attrs} children={len(self.children)}>"

    @property
    def classes(self) -> list[str]:
        return self.attrs.get("class", "").split()

    def iter_nodes(self) -> Iterator["HtmlNode"]:
        """Depth-first element traversal in document order, self excluded."""
        for child in self.children:
            if isinstance(child, HtmlNode):
                yield child
                yield from child.iter_nodes()

    def text(self, separator: str = " ") -> str:
        chunks: list[str] = []
        self._collect_text(chunks)
        return separator.join(chunks)

    def _collect_text(self, chunks: list[str]) -> None:
        for child in self.children:
            if isinstance(child, str):
                if child.strip():
                    chunks.append(child.strip())
            else:
                child._collect_text(chunks)


class _TreeBuilder(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.root = HtmlNode("document")
        self._stack = [self.root]

    def _open(self) -> HtmlNode:
        return self._stack[-1]

    def handle_starttag(self, tag: str, attrs: list[tuple[str, str | None]]) -> None:
        self._implicit_close(tag)
        node = HtmlNode(tag, {k: (v or "") for k, v in attrs}, parent=self._open())
        self._open().children.append(node)
        if tag not in VOID_ELEMENTS:
            self._stack.append(node)

    def handle_startendtag(self, tag: str, attrs: list[tuple[str, str | None]]) -> None:
        node = HtmlNode(tag, {k: (v or "") for k, v in attrs}, parent=self._open())
        self._open().children.append(node)

    def handle_endtag(self, tag: str) -> None:
        for i in range(len(self._stack) - 1, 0, -1):
            if self._stack[i].tag == tag:
                del self._stack[i:]
                return
        # Unmatched closing tag: ignore.

    def handle_data(self, data: str) -> None:
        if data:
            self._open().children.append(data)

    def _implicit_close(self, incoming: str) -> None:
        if incoming in _P_CLOSERS and any(n.tag == "p" for n in self._stack):
            self.handle_endtag("p")
        closers = _SELF_CLOSERS.get(incoming)
        if closers:
            for node in reversed(self._stack):
                if node.tag in closers:
                    self.handle_endtag(node.tag)
                    break


def parse_html(markup: str | bytes) -> HtmlNode:
    """Parse markup into a tree; never raises on malformed input."""
    if isinstance(markup, bytes):
        markup = markup.decode("utf-8", errors="replace")
    builder = _TreeBuilder()
    try:
        builder.feed(markup)
        builder.close()
    except Exception:  # html.parser is already lenient; belt and braces
        pass
    return builder.root


_SIMPLE_RE = re.compile(
    r"""
    (?P<tag>[a-zA-Z][\w-]*|\*)?
    (?P<rest>(?:[.#][\w-]+|\[[^\]]+\])*)
    """,
    re.VERBOSE,
)
_PART_RE = re.compile(r"\.(?P<cls>[\w-]+)|\#(?P<id>[\w-]+)|\[(?P<attr>[^\]]+)\]")


@dataclass(frozen=True)
class _SimpleSelector:
    tag: str | None
    classes: tuple[str, ...]
    id: str | None
    attrs: tuple[tuple[str, str | None], ...]

    def matches(self, node: HtmlNode) -> bool:
        if self.tag and self.tag != "*" and node.tag != self.tag:
            return False
        if self.id and node.attrs.get("id") != self.id:
            return False
        node_classes = node.classes
        if any(cls not in node_classes for cls in self.classes):
            return False
        for name, value in self.attrs:
            if name not in node.attrs:
                return False
            if value is not None and node.attrs[name] != value:
                return False
        return True


def _parse_simple(token: str) -> _SimpleSelector:
    match = _SIMPLE_RE.fullmatch(token)
    if not match or (not match.group("tag") and not match.group("rest")):
        raise ValueError(f"unsupported selector fragment {token!r}")
    classes: list[str] = []
    node_id: str | None = None
    attrs: list[tuple[str, str | None]] = []
    for part in _PART_RE.finditer(match.group("rest") or ""):
        if part.group("cls"):
            classes.append(part.group("cls"))
        elif part.group("id"):
            node_id = part.group("id")
        else:
            attr = part.group("attr")
            if "=" in attr:
                name, value = attr.split("=", 1)
                attrs.append((name.strip(), value.strip().strip("'\"")))
            else:
                attrs.append((attr.strip(), None))
    return _SimpleSelector(match.group("tag"), tuple(classes), node_id, tuple(attrs))


def select(root: HtmlNode, selector: str) -> list[HtmlNode]:
    """All nodes matching a descendant-combinator selector, in document order."""
    parts = [_parse_simple(tok) for tok in selector.split()]
    if not parts:
        return []
    found = []
    for node in root.iter_nodes():
        if not parts[-1].matches(node):
            continue
        remaining = len(parts) - 2
        ancestor = node.parent
        while remaining >= 0 and ancestor is not None:
            if parts[remaining].matches(ancestor):
                remaining -= 1
            ancestor = ancestor.parent
        if remaining < 0:
            found.append(node)
    return found


def select_first(root: HtmlNode, selector: str) -> HtmlNode | None:
    matches = select(root, selector)
    return matches[0] if matches else None
