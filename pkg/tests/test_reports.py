import json

import pytest

from veritas.core import BinaryLabel
from veritas.errors import ReportFormatError
from veritas.evalharness.agreement import agreement_analysis
from veritas.evalharness.metrics import compute_metrics
from veritas.evalharness.reports import ReportBundle, emit_report
from veritas.evalharness.timing import timing_stats

R = BinaryLabel.RELIABLE
U = BinaryLabel.UNRELIABLE


@pytest.fixture
def bundle():
    metrics = compute_metrics([R, R, U, U], [R, U, U, U], model_name="article+summac-zs")
    labels = {"a": R, "b": U, "c": R}
    agreement = agreement_analysis(
        {
            "article+summac-zs": {"a": R, "b": U, "c": U},
            "qa+factcc": {"a": U, "b": U, "c": R},
        },
        labels,
    )
    timing = timing_stats({"article/scrape": [1.0, 2.0], "article/summac-zs": [0.1, 0.2]})
    return ReportBundle(
        metrics=(metrics,), agreement=agreement, timing=timing, header={"dataset": "demo"}
    )


def test_markdown_renders_metric_row(bundle):
    rendered = emit_report(bundle, "markdown")
    assert "| Model | Accuracy | Precision | Recall | F1 |" in rendered
    assert "| article+summac-zs | 0.7500 | 0.50 | 1.00 | 0.67 |" in rendered
    assert "Positive class: Reliable" in rendered


def test_json_top_level_schema(bundle):
    payload = json.loads(emit_report(bundle, "json"))
    assert payload["schema_version"] == 1
    assert set(payload) == {
        "schema_version",
        "positive_class",
        "header",
        "metrics",
        "agreement",
        "timing",
    }
    assert payload["positive_class"] == "Reliable"
    assert payload["metrics"][0]["model"] == "article+summac-zs"
    assert payload["agreement"]["models"] == ["article+summac-zs", "qa+factcc"]
    assert "article/scrape" in payload["timing"]


def test_csv_has_metric_columns(bundle):
    rendered = emit_report(bundle, "csv")
    lines = rendered.strip().splitlines()
    assert lines[0] == "model,accuracy,precision,recall,f1,tp,fp,fn,tn"
    assert lines[1].startswith("article+summac-zs,0.75,")


def test_unknown_format_rejected(bundle):
    with pytest.raises(ReportFormatError, match="unknown report format"):
        emit_report(bundle, "xml")


def test_empty_bundle_rejected():
    with pytest.raises(ReportFormatError):
        emit_report(ReportBundle(metrics=()), "json")


def test_reports_byte_identical_across_runs(bundle):
    for fmt in ("json", "csv", "markdown"):
        assert emit_report(bundle, fmt) == emit_report(bundle, fmt)
