"""Qualitative checks that need real checkpoints.

These run only when VERITAS_SIDECAR_TEST_REAL=1 and the configured models
can actually be loaded (weights downloadable or cached). In hermetic
environments they skip; the mock-mode contract suite in test_api.py is the
always-on gate.
"""

import os
import time

import pytest
from fastapi.testclient import TestClient

from veritas_sidecar.app import create_app
from veritas_sidecar.config import SidecarConfig
from veritas_sidecar.engines import make_engine

RUN_REAL = os.environ.get("VERITAS_SIDECAR_TEST_REAL", "") == "1"

pytestmark = pytest.mark.skipif(
    not RUN_REAL, reason="real-checkpoint tests disabled (set VERITAS_SIDECAR_TEST_REAL=1)"
)

ARTICLE = (
    "Max Verstappen crowned Formula One world champion. Max Verstappen was "
    "crowned Formula One world champion for the third time, securing the "
    "title in the sprint race at the Qatar Grand Prix on Saturday."
)
HEADLINE = "Max Verstappen wins 2023 F1 world title"
PERTURBED = "Max Verstappen wins 2013 F1 world title"


@pytest.fixture(scope="module")
def client():
    config = SidecarConfig.from_env()
    engine = make_engine(SidecarConfig(
        mock=False,
        nli_model=config.nli_model,
        consistency_model=config.consistency_model,
        slm_model=config.slm_model,
    ))
    app = create_app(config, engine)
    test_client = TestClient(app)
    deadline = time.time() + 600
    while time.time() < deadline:
        health = test_client.get("/healthz").json()
        if health["ready"]:
            return test_client
        if health.get("error"):
            pytest.skip(f"model loading failed: {health['error']}")
        time.sleep(5)
    pytest.skip("models did not become ready within 10 minutes")


def test_paraphrase_pair_ranks_entail_first(client):
    response = client.post(
        "/v1/nli/batch",
        json={
            "pairs": [
                {
                    "premise": "Max Verstappen was crowned champion",
                    "hypothesis": "Max Verstappen wins title",
                }
            ]
        },
    )
    assert response.status_code == 200
    dist = response.json()["distributions"][0]
    assert dist["entail"] > dist["contradict"]
    assert dist["entail"] > dist["neutral"]


def test_consistency_high_for_supported_headline(client):
    response = client.post(
        "/v1/consistency", json={"document": ARTICLE, "claim": HEADLINE}
    )
    assert response.status_code == 200
    assert response.json()["score"] >= 0.9  # reference value 0.9992, tolerance 0.05


def test_verbatim_claim_scores_above_half(client):
    response = client.post(
        "/v1/consistency", json={"document": ARTICLE, "claim": ARTICLE}
    )
    assert response.json()["score"] > 0.5


def test_zero_shot_scorer_separates_true_from_number_swapped(client):
    """Article premise scores the true headline above the year-swapped one,
    and a calibrated-zero threshold classifies them apart."""
    from veritas.nli.backends import HttpNliBackend
    from veritas.nli.matrix import build_pair_matrix
    from veritas.nli.scorers import summac_zs_score

    backend = HttpNliBackend("http://testserver", session=client)
    true_score = summac_zs_score(build_pair_matrix(ARTICLE, HEADLINE, backend))
    fake_score = summac_zs_score(build_pair_matrix(ARTICLE, PERTURBED, backend))
    assert true_score > fake_score
    assert true_score > 0.0
    assert fake_score < true_score - 0.2
