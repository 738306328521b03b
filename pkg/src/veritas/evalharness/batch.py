"""Batch evaluation: calibrate on a stratified slice, report on the rest.

For every (pipeline, scorer) combination the runner scores the calibration
split first (matrix scorers get their decision threshold from it; the
document-level scorer keeps its fixed 0.5), then evaluates the remaining
claims. Evidence bundles are cached so each query is scraped once no matter
how many scorers consume it. Claims where any combination found no evidence
are excluded from every model's report so agreement sets stay aligned.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..core import BinaryLabel, Pipeline, Scorer
from ..errors import NoEvidenceError
from ..nli.calibration import CalibrationResult, calibrate_threshold
from ..pipelines.runner import (
    PipelineDeps,
    PipelineRun,
    run_article_pipeline,
    run_question_answer_pipeline,
    run_slm_pipeline,
)
from ..retrieval.evidence import EvidenceCache
from .agreement import AgreementReport, agreement_analysis
from .datasets import Dataset, stratified_split
from .metrics import MetricsReport, compute_metrics
from .timing import TimingStats, timing_stats


def model_name(pipeline: Pipeline, scorer: Scorer) -> str:
    return f"{pipeline.value}+{scorer.value}"


@dataclass(frozen=True)
class EvalOutcome:
    metrics: tuple[MetricsReport, ...]
    agreement: Optional[AgreementReport]
    timing: TimingStats
    calibrations: dict[str, CalibrationResult]
    thresholds: dict[str, float]
    calib_ids: tuple[str, ...]
    report_ids: tuple[str, ...]
    skipped_ids: tuple[str, ...]
    predictions: dict[str, dict[str, BinaryLabel]] = field(repr=False, default_factory=dict)


def _run_one(
    claim_text: str, claim_id: str, pipeline: Pipeline, scorer: Scorer, deps: PipelineDeps
) -> Optional[PipelineRun]:
    try:
        if pipeline is Pipeline.ARTICLE:
            return run_article_pipeline(claim_text, scorer, deps, claim_id=claim_id)
        if pipeline is Pipeline.QUESTION_ANSWER:
            return run_question_answer_pipeline(claim_text, scorer, deps, claim_id=claim_id)
        return run_slm_pipeline(claim_text, pipeline, scorer, deps, claim_id=claim_id)
    except NoEvidenceError:
        return None


def run_evaluation(
    dataset: Dataset,
    combos: Sequence[tuple[Pipeline, Scorer]],
    deps: PipelineDeps,
    *,
    calib_fraction: float = 0.2,
    seed: int = 42,
    grid_step: float = 0.01,
) -> EvalOutcome:
    if not combos:
        raise ValueError("no pipeline/scorer combinations requested")
    calib, report = stratified_split(dataset, calib_fraction, seed)
    calib_ids = {record.id for record in calib.records}
    report_ids = {record.id for record in report.records}
    assert not calib_ids & report_ids, "calibration split leaked into reporting split"

    if deps.evidence_cache is None:
        deps = dataclasses.replace(deps, evidence_cache=EvidenceCache())

    # Calibrate matrix-scorer thresholds on the calibration split.
    calibrations: dict[str, CalibrationResult] = {}
    thresholds: dict[str, float] = {}
    for pipeline, scorer in combos:
        name = model_name(pipeline, scorer)
        if scorer is Scorer.FACTCC:
            thresholds[name] = 0.5
            continue
        scores: list[float] = []
        labels: list[BinaryLabel] = []
        for record in calib.records:
            run = _run_one(record.text, record.id, pipeline, scorer, deps)
            if run is None:
                continue
            scores.append(run.record.score)
            labels.append(record.label)  # type: ignore[arg-type]
        result = calibrate_threshold(scores, labels, grid_step, split_seed=seed)
        calibrations[name] = result
        thresholds[name] = result.threshold

    # Score the reporting split with each model's threshold.
    runs: dict[str, dict[str, PipelineRun]] = {}
    for pipeline, scorer in combos:
        name = model_name(pipeline, scorer)
        combo_deps = dataclasses.replace(
            deps, thresholds={**deps.thresholds, scorer: thresholds[name]}
        )
        runs[name] = {}
        for record in report.records:
            run = _run_one(record.text, record.id, pipeline, scorer, combo_deps)
            if run is not None:
                runs[name][record.id] = run

    evaluable = [
        record
        for record in report.records
        if all(record.id in model_runs for model_runs in runs.values())
    ]
    skipped = tuple(
        record.id
        for record in report.records
        if any(record.id not in model_runs for model_runs in runs.values())
    )
    labels_by_id = {record.id: record.label for record in evaluable}

    metrics: list[MetricsReport] = []
    predictions: dict[str, dict[str, BinaryLabel]] = {}
    timing_samples: dict[str, list[float]] = {}
    scrape_seen: set[tuple[Pipeline, str]] = set()
    for pipeline, scorer in combos:
        name = model_name(pipeline, scorer)
        predictions[name] = {
            record.id: runs[name][record.id].record.verdict for record in evaluable
        }
        if evaluable:
            metrics.append(
                compute_metrics(
                    [predictions[name][record.id] for record in evaluable],
                    [labels_by_id[record.id] for record in evaluable],  # type: ignore[misc]
                    model_name=name,
                )
            )
        for record in evaluable:
            timings = runs[name][record.id].record.timings
            if (pipeline, record.id) not in scrape_seen:
                scrape_seen.add((pipeline, record.id))
                timing_samples.setdefault(f"{pipeline.value}/scrape", []).append(
                    timings.scrape_seconds
                )
            timing_samples.setdefault(f"{pipeline.value}/{scorer.value}", []).append(
                timings.score_seconds
            )

    agreement = None
    if len(predictions) >= 2 and evaluable:
        agreement = agreement_analysis(
            predictions, labels_by_id  # type: ignore[arg-type]
        )

    return EvalOutcome(
        metrics=tuple(metrics),
        agreement=agreement,
        timing=timing_stats(timing_samples),
        calibrations=calibrations,
        thresholds=thresholds,
        calib_ids=tuple(record.id for record in calib.records),
        report_ids=tuple(record.id for record in report.records),
        skipped_ids=skipped,
        predictions=predictions,
    )
