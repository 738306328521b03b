"""Shared fixtures: canned HTML pages, recorded-fixture stores for the
championship-headline scenario, and an instrumented local HTTP server that
logs every request it receives.
"""

from __future__ import annotations

import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from veritas.retrieval.fixtures import FixtureStore

HEADLINE = "Max Verstappen wins 2023 F1 world title"
GENERATED_QUESTION = "Who won the 2023 Formula 1 World Championship?"
MOCK_QUESTION = f"Is it true that {HEADLINE}?"
QUICK_ANSWER = "Max Verstappen"
PAA_QUESTION = "Has Verstappen won the World Championship in 2023?"
PAA_ANSWER = (
    "F1's most races left in a season before championship win. It became clear "
    "very early on that Verstappen would become a triple world champion in 2023. "
    "His season has been that dominant that the Red Bull driver sealed the "
    "championship in October after the Qatar GP sprint race."
)
ARTICLE_HEADING = "Max Verstappen crowned Formula One world champion"
ARTICLE_BODY = (
    "Max Verstappen was crowned Formula One world champion for the third time, "
    "securing the title in the sprint race at the Qatar Grand Prix on Saturday. "
    "There are few outcomes in sport that seem inevitable. Human and, in F1, "
    "engineering error can strike at any moment, with competitors waiting to pounce."
)

ARTICLE_URLS = (
    "https://news-one.example/f1/verstappen-crowned",
    "https://news-two.example/sport/f1-world-champion",
    "https://news-three.example/motor/qatar-sprint",
)

SERP_URL = "https://www.google.com/search?q=max+verstappen"


def serp_html(
    quick_answer: str | None = QUICK_ANSWER,
    paa: list[tuple[str, str]] | None = None,
    links: list[tuple[str, str]] | None = None,
) -> str:
    parts = ["<html><body>"]
    if quick_answer is not None:
        parts.append(f'<div class="quick-answer"><span>{quick_answer}</span></div>')
    for question, answer in paa or []:
        parts.append(
            '<div class="paa-item">'
            f'<div class="paa-question">{question}</div>'
            f'<div class="paa-answer">{answer}</div>'
            "</div>"
        )
    for url, title in links or []:
        parts.append(
            '<div class="result">'
            f'<a class="result-link" href="{url}"><span class="result-title">{title}</span></a>'
            "</div>"
        )
    parts.append("</body></html>")
    return "\n".join(parts)


def article_html(
    headings: list[str], paragraphs: list[str], *, with_chrome: bool = True
) -> str:
    parts = ["<html><body>"]
    if with_chrome:
        parts.append(
            "<nav><ul><li><a href='/'>Home</a></li><li><a href='/sport'>Sport</a></li></ul>"
            "<p>Subscribe to our newsletter for daily updates and offers</p></nav>"
        )
    parts.append("<article>")
    for heading in headings:
        parts.append(f"<h1>{heading}</h1>")
    for paragraph in paragraphs:
        parts.append(f"<p>{paragraph}</p>")
    parts.append("</article>")
    if with_chrome:
        parts.append("<footer><p>Copyright 2024 Example News, all rights reserved</p></footer>")
    parts.append("</body></html>")
    return "\n".join(parts)


def default_paa() -> list[tuple[str, str]]:
    return [(PAA_QUESTION, PAA_ANSWER)]


def default_links() -> list[tuple[str, str]]:
    return [
        (ARTICLE_URLS[0], ARTICLE_HEADING),
        (ARTICLE_URLS[1], "Verstappen seals third world title"),
        (ARTICLE_URLS[2], "Qatar sprint decides the championship"),
    ]


def build_scenario_store(
    root,
    *,
    quick_answer: bool = True,
    paa: bool = True,
    links: bool = True,
    extra_queries: tuple[str, ...] = (),
) -> FixtureStore:
    """A recorded-page set for the championship headline.

    Flags drop the quick-answer box / related questions / result links so the
    three fallback stages can each be exercised.
    """
    store = FixtureStore(root)
    body = serp_html(
        quick_answer=QUICK_ANSWER if quick_answer else None,
        paa=default_paa() if paa else None,
        links=default_links() if links else None,
    ).encode()
    for query in (HEADLINE, GENERATED_QUESTION, MOCK_QUESTION, *extra_queries):
        store.put_serp(query, SERP_URL, body)
    article = article_html([ARTICLE_HEADING], [ARTICLE_BODY]).encode()
    for url in ARTICLE_URLS:
        store.put_page(url, article)
    return store


@pytest.fixture
def scenario_store(tmp_path) -> FixtureStore:
    return build_scenario_store(tmp_path / "fixtures")


DENIAL_TEXT = (
    "Officials reported entirely different figures about an unrelated subject, "
    "contradicting the circulating version of events outright."
)


def build_claim_store(root, records) -> FixtureStore:
    """Recorded pages for a batch of labeled claims: reliable claims get
    evidence echoing the claim, unreliable ones get unrelated denial text, so
    overlap-based mock scoring separates the classes."""
    store = FixtureStore(root)
    for record in records:
        answer = record.text if record.label.value == "Reliable" else DENIAL_TEXT
        article_url = f"https://news.example/{record.id}"
        serp = serp_html(
            quick_answer=answer,
            paa=[(f"Is this claim accurate: {record.text}?", answer)],
            links=[(article_url, record.text)],
        ).encode()
        serp_url = f"https://www.google.com/search?q={record.id}"
        store.put_serp(record.text, serp_url, serp)
        store.put_serp(f"Is it true that {record.text}?", serp_url, serp)
        padding = "The report circulated widely across major outlets during the week."
        store.put_page(
            article_url,
            article_html([answer], [f"{answer} {padding}"]).encode(),
        )
    return store


class _RecordingHandler(BaseHTTPRequestHandler):
    def do_GET(self):  # noqa: N802 - http.server API
        server: RecordingServer = self.server  # type: ignore[assignment]
        with server.log_lock:
            server.requests.append(self.path)
        entry = server.routes.get(self.path.split("?", 1)[0])
        if entry is None:
            self.send_response(404)
            self.end_headers()
            self.wfile.write(b"not found")
            return
        status, body = entry
        self.send_response(status)
        self.send_header("Content-Type", "text/html; charset=utf-8")
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, *args):  # silence test output
        pass


class RecordingServer(ThreadingHTTPServer):
    """Local server with a route table and a request log."""

    def __init__(self):
        super().__init__(("127.0.0.1", 0), _RecordingHandler)
        self.routes: dict[str, tuple[int, bytes]] = {}
        self.requests: list[str] = []
        self.log_lock = threading.Lock()

    @property
    def url(self) -> str:
        host, port = self.server_address
        return f"http://{host}:{port}"

    def add(self, path: str, body: str | bytes, status: int = 200) -> str:
        if isinstance(body, str):
            body = body.encode()
        self.routes[path] = (status, body)
        return self.url + path


@pytest.fixture
def http_server():
    server = RecordingServer()
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield server
    finally:
        server.shutdown()
        thread.join(timeout=5)
        server.server_close()
