"""Dataset loading, batch evaluation, metrics, agreement and timing reports."""

from .agreement import AgreementReport, agreement_analysis
from .batch import EvalOutcome, run_evaluation
from .datasets import (
    Dataset,
    SourceFormat,
    load_eval,
    load_liar,
    split_dataset,
    stratified_split,
    write_eval_csv,
)
from .metrics import Confusion, MetricsReport, compute_metrics
from .reports import ReportBundle, emit_report, explanation_to_json_dict, verdict_to_json_dict
from .timing import StageStats, TimingStats, timing_stats

__all__ = [
    "AgreementReport",
    "Confusion",
    "Dataset",
    "EvalOutcome",
    "MetricsReport",
    "ReportBundle",
    "SourceFormat",
    "StageStats",
    "TimingStats",
    "agreement_analysis",
    "compute_metrics",
    "emit_report",
    "explanation_to_json_dict",
    "load_eval",
    "load_liar",
    "run_evaluation",
    "split_dataset",
    "stratified_split",
    "timing_stats",
    "verdict_to_json_dict",
    "write_eval_csv",
]
