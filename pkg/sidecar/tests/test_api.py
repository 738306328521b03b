"""Sidecar contract tests, run entirely in mock mode (no model weights)."""

import pytest
from fastapi.testclient import TestClient

from veritas_sidecar.app import create_app
from veritas_sidecar.config import SidecarConfig
from veritas_sidecar.engines import MockEngine


@pytest.fixture
def client():
    config = SidecarConfig(mock=True, seed=0)
    return TestClient(create_app(config, MockEngine(seed=0)))


def pair(premise, hypothesis):
    return {"premise": premise, "hypothesis": hypothesis}


class TestHealthz:
    def test_mock_mode_is_ready(self, client):
        body = client.get("/healthz").json()
        assert body["ready"] is True
        assert body["mock"] is True
        assert set(body["models"]) == {"nli", "consistency", "slm"}


class TestNliBatch:
    def test_distributions_parallel_request_and_lie_on_simplex(self, client):
        pairs = [pair(f"premise {i}", f"hypothesis {i}") for i in range(50)]
        response = client.post("/v1/nli/batch", json={"pairs": pairs})
        assert response.status_code == 200
        distributions = response.json()["distributions"]
        assert len(distributions) == 50
        for dist in distributions:
            assert 0.0 <= dist["entail"] <= 1.0
            assert 0.0 <= dist["contradict"] <= 1.0
            assert 0.0 <= dist["neutral"] <= 1.0
            total = dist["entail"] + dist["contradict"] + dist["neutral"]
            assert abs(total - 1.0) <= 1e-6

    def test_identical_requests_return_identical_bodies(self, client):
        payload = {"pairs": [pair("the premise text", "the hypothesis text")] * 3}
        first = client.post("/v1/nli/batch", json=payload)
        second = client.post("/v1/nli/batch", json=payload)
        assert first.content == second.content

    def test_identical_pairs_within_batch_get_identical_rows(self, client):
        payload = {"pairs": [pair("p", "h"), pair("p", "h")]}
        distributions = client.post("/v1/nli/batch", json=payload).json()["distributions"]
        assert distributions[0] == distributions[1]

    def test_empty_batch_is_400(self, client):
        assert client.post("/v1/nli/batch", json={"pairs": []}).status_code == 400

    def test_oversize_batch_is_413(self, client):
        payload = {"pairs": [pair(f"p{i}", f"h{i}") for i in range(257)]}
        assert client.post("/v1/nli/batch", json=payload).status_code == 413

    def test_max_size_batch_accepted(self, client):
        payload = {"pairs": [pair(f"p{i}", f"h{i}") for i in range(256)]}
        assert client.post("/v1/nli/batch", json=payload).status_code == 200

    @pytest.mark.parametrize(
        "payload",
        [
            {},
            {"pairs": [{"premise": "only one side"}]},
            {"pairs": [{"premise": "", "hypothesis": "x"}]},
            {"pairs": "not a list"},
        ],
    )
    def test_malformed_payloads_are_400(self, client, payload):
        assert client.post("/v1/nli/batch", json=payload).status_code == 400

    def test_seed_changes_distributions(self):
        a = TestClient(create_app(SidecarConfig(mock=True), MockEngine(seed=1)))
        b = TestClient(create_app(SidecarConfig(mock=True), MockEngine(seed=2)))
        payload = {"pairs": [pair("p", "h")]}
        assert (
            a.post("/v1/nli/batch", json=payload).content
            != b.post("/v1/nli/batch", json=payload).content
        )


class TestConsistency:
    def test_score_in_unit_interval(self, client):
        response = client.post(
            "/v1/consistency", json={"document": "doc text", "claim": "claim text"}
        )
        assert response.status_code == 200
        assert 0.0 <= response.json()["score"] <= 1.0

    def test_deterministic(self, client):
        payload = {"document": "doc text", "claim": "claim text"}
        first = client.post("/v1/consistency", json=payload)
        second = client.post("/v1/consistency", json=payload)
        assert first.content == second.content

    def test_missing_field_is_400(self, client):
        assert client.post("/v1/consistency", json={"document": "x"}).status_code == 400


class TestSlmGenerate:
    def test_question_task_mentions_headline_subject(self, client):
        response = client.post(
            "/v1/slm/generate",
            json={
                "task": "question",
                "headline": "India wins 2023 ICC Men's Cricket World Cup",
            },
        )
        assert response.status_code == 200
        text = response.json()["text"]
        assert "2023 ICC Men's Cricket World Cup" in text
        assert text.endswith("?")
        assert "\n" not in text

    def test_fake_headline_distinct_from_input(self, client):
        headline = "Team clinches 2023 league title in final match"
        response = client.post(
            "/v1/slm/generate", json={"task": "fake_headline", "headline": headline}
        )
        assert response.status_code == 200
        text = response.json()["text"]
        assert text.lower() != headline.lower()
        assert "\n" not in text

    def test_deterministic(self, client):
        payload = {"task": "question", "headline": "Some event happened in 2024"}
        first = client.post("/v1/slm/generate", json=payload)
        second = client.post("/v1/slm/generate", json=payload)
        assert first.content == second.content

    def test_unknown_task_is_400(self, client):
        response = client.post(
            "/v1/slm/generate", json={"task": "summarize", "headline": "x"}
        )
        assert response.status_code == 400


class TestLoadingState:
    def test_not_ready_engine_returns_503(self):
        class NeverReady:
            def ready(self):
                return False

            def nli_batch(self, pairs):  # pragma: no cover - unreachable
                raise AssertionError

            def consistency(self, document, claim):  # pragma: no cover
                raise AssertionError

            def generate(self, task, headline):  # pragma: no cover
                raise AssertionError

        client = TestClient(create_app(SidecarConfig(mock=False), NeverReady()))
        assert (
            client.post(
                "/v1/nli/batch", json={"pairs": [pair("p", "h")]}
            ).status_code
            == 503
        )
        assert (
            client.post(
                "/v1/consistency", json={"document": "d", "claim": "c"}
            ).status_code
            == 503
        )
        assert (
            client.post(
                "/v1/slm/generate", json={"task": "question", "headline": "h"}
            ).status_code
            == 503
        )
        assert client.get("/healthz").json()["ready"] is False


class TestPrimaryClientIntegration:
    """The verification engine's HTTP clients speak to this app directly."""

    def test_http_nli_backend_round_trip(self, client):
        from veritas.nli.backends import HttpNliBackend

        backend = HttpNliBackend("http://testserver", session=client)
        distributions = backend.score_pairs([("premise one", "claim one")])
        assert len(distributions) == 1
        total = (
            distributions[0].entail
            + distributions[0].contradict
            + distributions[0].neutral
        )
        assert abs(total - 1.0) <= 1e-6

    def test_http_consistency_backend_round_trip(self, client):
        from veritas.nli.backends import HttpConsistencyBackend

        backend = HttpConsistencyBackend("http://testserver", session=client)
        assert 0.0 <= backend.consistency_score("document", "claim") <= 1.0

    def test_http_slm_backend_round_trip(self, client):
        from veritas.pipelines.slm import HttpSlmBackend, generate_question

        backend = HttpSlmBackend("http://testserver", session=client)
        question = generate_question("Economy grew 3 percent in 2024", backend)
        assert question.endswith("?")
