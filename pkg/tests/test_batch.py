import pytest

from veritas.core import BinaryLabel, ClaimRecord, Pipeline, Scorer
from veritas.evalharness.batch import model_name, run_evaluation
from veritas.evalharness.datasets import Dataset, SourceFormat
from veritas.nli.backends import LexicalConsistencyBackend, LexicalNliBackend
from veritas.pipelines.runner import PipelineDeps
from veritas.pipelines.slm import MockSlmBackend
from veritas.retrieval.evidence import RetrievalConfig
from veritas.retrieval.provider import FixtureSearchProvider

from conftest import build_claim_store

R = BinaryLabel.RELIABLE
U = BinaryLabel.UNRELIABLE


def make_dataset(n_per_class=10) -> Dataset:
    records = []
    for i in range(n_per_class):
        records.append(
            ClaimRecord(
                id=f"r{i:02d}", text=f"Reliable event number {i} took place", label=R
            )
        )
        records.append(
            ClaimRecord(
                id=f"u{i:02d}", text=f"Fabricated event number {i} took place", label=U
            )
        )
    return Dataset(tuple(records), "synthetic", SourceFormat.EVAL_CSV)


@pytest.fixture
def deps(tmp_path):
    dataset = make_dataset()
    store = build_claim_store(tmp_path / "fx", dataset.records)
    slm = MockSlmBackend()
    return dataset, PipelineDeps(
        provider=FixtureSearchProvider(store, user_agent="veritas-bot/0.1"),
        nli_backend=LexicalNliBackend(),
        consistency_backend=LexicalConsistencyBackend(),
        slm_backends={Pipeline.SLM_MISTRAL: slm, Pipeline.SLM_PHI3: slm},
        retrieval=RetrievalConfig(k=3),
    )


COMBOS = [
    (Pipeline.ARTICLE, Scorer.SUMMAC_ZS),
    (Pipeline.QUESTION_ANSWER, Scorer.FACTCC),
    (Pipeline.SLM_PHI3, Scorer.SUMMAC_CONV),
]


def test_end_to_end_evaluation(deps):
    dataset, pipeline_deps = deps
    outcome = run_evaluation(dataset, COMBOS, pipeline_deps, calib_fraction=0.2, seed=42)

    assert len(outcome.calib_ids) == 4
    assert len(outcome.report_ids) == 16
    assert not set(outcome.calib_ids) & set(outcome.report_ids)
    assert outcome.skipped_ids == ()

    names = [model_name(p, s) for p, s in COMBOS]
    assert [m.model_name for m in outcome.metrics] == names
    # Overlap-separable synthetic data: every model classifies perfectly.
    for report in outcome.metrics:
        assert report.accuracy == 1.0

    # Matrix scorers got calibrated thresholds; the document scorer stays 0.5.
    assert outcome.thresholds["qa+factcc"] == 0.5
    assert "article+summac-zs" in outcome.calibrations
    assert outcome.calibrations["article+summac-zs"].accuracy_at_threshold == 1.0

    assert outcome.agreement is not None
    assert set(outcome.agreement.correct) == set(names)

    assert "article/scrape" in outcome.timing.stages
    assert "article/summac-zs" in outcome.timing.stages
    assert "qa/factcc" in outcome.timing.stages


def test_runs_are_deterministic(deps):
    dataset, pipeline_deps = deps
    first = run_evaluation(dataset, COMBOS, pipeline_deps, calib_fraction=0.2, seed=42)
    second = run_evaluation(dataset, COMBOS, pipeline_deps, calib_fraction=0.2, seed=42)
    assert first.predictions == second.predictions
    assert first.thresholds == second.thresholds
    assert [m.to_json_dict() for m in first.metrics] == [
        m.to_json_dict() for m in second.metrics
    ]


def test_seed_changes_split_not_schema(deps):
    dataset, pipeline_deps = deps
    a = run_evaluation(dataset, COMBOS[:1], pipeline_deps, calib_fraction=0.2, seed=1)
    b = run_evaluation(dataset, COMBOS[:1], pipeline_deps, calib_fraction=0.2, seed=2)
    assert set(a.calib_ids) != set(b.calib_ids)
    assert len(a.calib_ids) == len(b.calib_ids)


def test_half_calibration_split(deps):
    dataset, pipeline_deps = deps
    outcome = run_evaluation(dataset, COMBOS[:1], pipeline_deps, calib_fraction=0.5, seed=42)
    assert len(outcome.calib_ids) == 10
    assert len(outcome.report_ids) == 10


def test_no_combos_rejected(deps):
    dataset, pipeline_deps = deps
    with pytest.raises(ValueError):
        run_evaluation(dataset, [], pipeline_deps)
