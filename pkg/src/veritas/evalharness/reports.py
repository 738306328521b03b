"""Report emission (json / csv / markdown) and verdict serialization.

All emitters produce deterministic output for fixed inputs: keys are sorted,
field order is pinned, and floats go through repr (stable in CPython 3).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional

from ..core import VerdictRecord
from ..errors import ReportFormatError
from .agreement import AgreementReport
from .metrics import POSITIVE_CLASS, MetricsReport
from .timing import TimingStats

if TYPE_CHECKING:  # pragma: no cover
    from ..pipelines.runner import ExplanationRecord

SCHEMA_VERSION = 1
FORMATS = ("json", "csv", "markdown")


@dataclass(frozen=True)
class ReportBundle:
    metrics: tuple[MetricsReport, ...]
    agreement: Optional[AgreementReport] = None
    timing: Optional[TimingStats] = None
    header: dict = field(default_factory=dict)


def verdict_to_json_dict(record: VerdictRecord, *, include_timings: bool = True) -> dict:
    payload = {
        "claim_id": record.claim_id,
        "pipeline": record.pipeline.value,
        "scorer": record.scorer.value,
        "score": record.score,
        "threshold": record.threshold,
        "verdict": record.verdict.as_report_string(),
        "evidence": {
            "query": record.evidence.query,
            "stage": record.evidence.stage.value,
            "passages": [
                {"url": url, "text": text} for url, text in record.evidence.passages
            ],
        },
    }
    if include_timings:
        payload["timings"] = {
            "scrape_seconds": record.timings.scrape_seconds,
            "score_seconds": record.timings.score_seconds,
        }
    return payload


def explanation_to_json_dict(
    explanation: "ExplanationRecord", *, include_premise: bool = True
) -> dict:
    payload = {
        "headline": explanation.headline,
        "scorer": explanation.scorer.value,
        "score": explanation.score,
        "verdict": explanation.verdict.as_report_string(),
        "stage": explanation.evidence.stage.value,
        "generated_question": explanation.generated_question,
        "question_fallback": explanation.question_fallback,
        "source_urls": list(explanation.source_urls),
    }
    if include_premise:
        payload["premise"] = explanation.premise
    return payload


def canonical_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def _bundle_to_json_dict(bundle: ReportBundle) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "positive_class": POSITIVE_CLASS.value,
        "header": bundle.header,
        "metrics": [report.to_json_dict() for report in bundle.metrics],
        "agreement": bundle.agreement.to_json_dict() if bundle.agreement else None,
        "timing": bundle.timing.to_json_dict() if bundle.timing else None,
    }


_METRIC_COLUMNS = ("model", "accuracy", "precision", "recall", "f1", "tp", "fp", "fn", "tn")


def _emit_csv(bundle: ReportBundle) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(_METRIC_COLUMNS)
    for report in bundle.metrics:
        writer.writerow(
            (
                report.model_name,
                repr(report.accuracy),
                repr(report.precision),
                repr(report.recall),
                repr(report.f1),
                report.confusion.tp,
                report.confusion.fp,
                report.confusion.fn,
                report.confusion.tn,
            )
        )
    return buffer.getvalue()


def _emit_markdown(bundle: ReportBundle) -> str:
    lines = [
        f"Positive class: {POSITIVE_CLASS.value}",
        "",
        "| Model | Accuracy | Precision | Recall | F1 |",
        "| --- | --- | --- | --- | --- |",
    ]
    for report in bundle.metrics:
        flags = " *" if report.undefined_precision or report.undefined_recall else ""
        lines.append(
            f"| {report.model_name} | {report.accuracy:.4f} | {report.precision:.2f}"
            f" | {report.recall:.2f} | {report.f1:.2f}{flags} |"
        )
    if any(r.undefined_precision or r.undefined_recall for r in bundle.metrics):
        lines.append("")
        lines.append("\\* zero-denominator metric reported as 0")
    if bundle.agreement is not None:
        lines.append("")
        lines.append("| Model | Unique correct | Unique incorrect |")
        lines.append("| --- | --- | --- |")
        for model in sorted(bundle.agreement.correct):
            lines.append(
                f"| {model} | {len(bundle.agreement.unique_correct[model])}"
                f" | {len(bundle.agreement.unique_incorrect[model])} |"
            )
    if bundle.timing is not None and bundle.timing.stages:
        lines.append("")
        lines.append("| Stage | Mean (s) | Median | Q1 | Q3 |")
        lines.append("| --- | --- | --- | --- | --- |")
        for name, stats in sorted(bundle.timing.stages.items()):
            lines.append(
                f"| {name} | {stats.mean:.4f} | {stats.median:.4f}"
                f" | {stats.q1:.4f} | {stats.q3:.4f} |"
            )
    return "\n".join(lines) + "\n"


def emit_report(bundle: ReportBundle, output_format: str) -> str:
    """Render a report bundle; format is one of json, csv, markdown."""
    if not bundle.metrics:
        raise ReportFormatError("report bundle has no metrics reports")
    if output_format == "json":
        return canonical_json(_bundle_to_json_dict(bundle))
    if output_format == "csv":
        return _emit_csv(bundle)
    if output_format == "markdown":
        return _emit_markdown(bundle)
    raise ReportFormatError(
        f"unknown report format {output_format!r}; expected one of {FORMATS}"
    )
