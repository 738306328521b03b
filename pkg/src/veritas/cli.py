"""Command-line entry point.

Commands: verify one headline, evaluate a dataset across pipeline/scorer
combinations, generate an evaluation dataset from credible headlines, and
train the classical baselines. Exit codes are pinned for scripting: 0 means
a verdict was produced, 2 means no evidence could be retrieved, 3 means the
infrastructure (scoring backend, network) was unavailable.

Configuration precedence is flags > environment > config file. Environment:
VERITAS_BACKEND_URL for the scoring backend, VERITAS_USER_AGENT for live
fetching.
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

import click

from .baselines import (
    Preprocessor,
    fit_tfidf,
    predict_logreg,
    predict_nb,
    train_logreg,
    train_nb,
    transform,
)
from .core import BinaryLabel, ClaimRecord, Pipeline, Scorer
from .errors import (
    DatasetFormatError,
    DegenerateGenerationError,
    NoEvidenceError,
    RetryableError,
    RobotsDisallowedError,
    VeritasError,
)
from .evalharness.batch import run_evaluation
from .evalharness.datasets import (
    Dataset,
    SourceFormat,
    load_eval,
    load_liar,
    split_dataset,
    write_eval_csv,
)
from .evalharness.metrics import compute_metrics
from .evalharness.reports import (
    ReportBundle,
    canonical_json,
    emit_report,
    explanation_to_json_dict,
    verdict_to_json_dict,
)
from .nli.backends import make_scoring_backends
from .nli.scorers import ConvScorerConfig
from .pipelines.runner import (
    PipelineDeps,
    run_article_pipeline,
    run_question_answer_pipeline,
    run_slm_pipeline,
)
from .pipelines.slm import HttpSlmBackend, MockSlmBackend, generate_fake_headline
from .retrieval.evidence import RetrievalConfig
from .retrieval.fetcher import PoliteFetcher, configured_user_agent
from .retrieval.fixtures import FixtureStore
from .retrieval.provider import FixtureSearchProvider, LiveSearchProvider

EXIT_OK = 0
EXIT_NO_EVIDENCE = 2
EXIT_INFRASTRUCTURE = 3

PIPELINE_CHOICES = {p.value: p for p in Pipeline}
SCORER_CHOICES = {s.value: s for s in Scorer}


@dataclass(frozen=True)
class RunConfig:
    pipelines: tuple[Pipeline, ...]
    scorers: tuple[Scorer, ...]
    k: int
    backend_url: str
    fixture_dir: Optional[Path]
    seed: int
    calib_fraction: float
    json_output: bool
    report_path: Optional[Path]
    conv_config_path: Optional[Path] = None
    threshold: Optional[float] = None

    def __post_init__(self) -> None:
        if not 0.0 < self.calib_fraction < 1.0:
            raise ValueError("calib fraction must be in (0, 1)")
        if self.k < 1:
            raise ValueError("k must be at least 1")

    @property
    def offline(self) -> bool:
        return self.fixture_dir is not None


def _load_config_file(path: Optional[str]) -> dict[str, Any]:
    if not path:
        return {}
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _resolve(flag: Any, env_name: Optional[str], file_config: dict, key: str, default: Any) -> Any:
    if flag is not None:
        return flag
    if env_name:
        from_env = os.environ.get(env_name)
        if from_env:
            return from_env
    if key in file_config:
        return file_config[key]
    return default


def _build_run_config(
    *,
    pipeline: tuple[str, ...],
    scorer: tuple[str, ...],
    k: Optional[int],
    backend_url: Optional[str],
    fixtures: Optional[str],
    seed: Optional[int],
    calib_frac: Optional[float],
    json_output: bool,
    report: Optional[str],
    config_file: Optional[str],
    conv_config: Optional[str],
    threshold: Optional[float],
) -> RunConfig:
    file_config = _load_config_file(config_file)
    backend = _resolve(backend_url, "VERITAS_BACKEND_URL", file_config, "backend_url", "mock:")
    fixture_dir = _resolve(fixtures, None, file_config, "fixtures", None)
    return RunConfig(
        pipelines=tuple(PIPELINE_CHOICES[p] for p in pipeline) or (Pipeline.ARTICLE,),
        scorers=tuple(SCORER_CHOICES[s] for s in scorer) or (Scorer.SUMMAC_ZS,),
        k=int(_resolve(k, None, file_config, "k", 3)),
        backend_url=str(backend),
        fixture_dir=Path(fixture_dir) if fixture_dir else None,
        seed=int(_resolve(seed, None, file_config, "seed", 42)),
        calib_fraction=float(_resolve(calib_frac, None, file_config, "calib_fraction", 0.2)),
        json_output=json_output,
        report_path=Path(report) if report else None,
        conv_config_path=Path(conv_config) if conv_config else None,
        threshold=threshold,
    )


def _build_deps(config: RunConfig) -> PipelineDeps:
    if config.offline:
        provider = FixtureSearchProvider(
            FixtureStore(config.fixture_dir), user_agent=configured_user_agent()
        )
    else:
        provider = LiveSearchProvider(PoliteFetcher())
    nli_backend, consistency_backend = make_scoring_backends(
        config.backend_url, seed=config.seed
    )
    if config.backend_url.startswith(("http://", "https://")):
        slm = HttpSlmBackend(config.backend_url)
    else:
        slm = MockSlmBackend()
    conv = (
        ConvScorerConfig.from_file(config.conv_config_path)
        if config.conv_config_path
        else ConvScorerConfig.default()
    )
    deps = PipelineDeps(
        provider=provider,
        nli_backend=nli_backend,
        consistency_backend=consistency_backend,
        slm_backends={Pipeline.SLM_MISTRAL: slm, Pipeline.SLM_PHI3: slm},
        retrieval=RetrievalConfig(k=config.k),
        conv_config=conv,
    )
    if config.threshold is not None:
        for scorer in config.scorers:
            deps.thresholds[scorer] = config.threshold
    return deps


def _common_options(command):
    options = [
        click.option(
            "--pipeline",
            "pipeline",
            multiple=True,
            type=click.Choice(sorted(PIPELINE_CHOICES)),
            help="Pipeline(s) to run; defaults to article.",
        ),
        click.option(
            "--scorer",
            "scorer",
            multiple=True,
            type=click.Choice(sorted(SCORER_CHOICES)),
            help="Scorer(s) to use; defaults to summac-zs.",
        ),
        click.option("--k", type=int, default=None, help="Top-k article links (default 3)."),
        click.option(
            "--backend-url",
            default=None,
            help="Scoring backend: http(s) sidecar URL, mock:, mock:lexical, or mock:hash.",
        ),
        click.option(
            "--fixtures",
            type=click.Path(exists=True, file_okay=False),
            default=None,
            help="Recorded-page directory; implies offline mode (no network).",
        ),
        click.option("--seed", type=int, default=None, help="Seed for splits and hash mocks."),
        click.option(
            "--calib-frac", type=float, default=None, help="Calibration fraction (default 0.2)."
        ),
        click.option("--json", "json_output", is_flag=True, help="Emit structured JSON."),
        click.option(
            "--report",
            type=click.Path(dir_okay=False, writable=True),
            default=None,
            help="Write the JSON report bundle to this path.",
        ),
        click.option(
            "--config",
            "config_file",
            type=click.Path(exists=True, dir_okay=False),
            default=None,
            help="JSON config file (lowest precedence).",
        ),
        click.option(
            "--conv-config",
            type=click.Path(exists=True, dir_okay=False),
            default=None,
            help="Histogram-scorer weight file; defaults to the packaged config.",
        ),
    ]
    for option in reversed(options):
        command = option(command)
    return command


@click.group()
def main() -> None:
    """Verify news headlines against live or recorded web evidence."""


@main.command()
@click.argument("headline")
@_common_options
@click.option("--threshold", type=float, default=None, help="Override the verdict threshold.")
def verify(headline: str, threshold: Optional[float], **kwargs) -> None:
    """Verify one HEADLINE and print the verdict with its evidence trail."""
    try:
        config = _build_run_config(threshold=threshold, **kwargs)
        deps = _build_deps(config)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        raise click.ClickException(str(exc)) from exc

    pipeline = config.pipelines[0]
    scorer = config.scorers[0]
    try:
        if pipeline is Pipeline.ARTICLE:
            run = run_article_pipeline(headline, scorer, deps)
        elif pipeline is Pipeline.QUESTION_ANSWER:
            run = run_question_answer_pipeline(headline, scorer, deps)
        else:
            run = run_slm_pipeline(headline, pipeline, scorer, deps)
    except NoEvidenceError as exc:
        click.echo(f"no evidence: {exc}", err=True)
        sys.exit(EXIT_NO_EVIDENCE)
    except RobotsDisallowedError as exc:
        click.echo(
            f"robots rules forbid this fetch: {exc}\n"
            "Hint: use --fixtures DIR, or configure a search engine that "
            "permits scraping for your agent.",
            err=True,
        )
        sys.exit(EXIT_INFRASTRUCTURE)
    except RetryableError as exc:
        click.echo(
            f"scoring backend unreachable: {exc}\n"
            "Hint: pass --fixtures DIR for offline replay, or --backend-url mock: "
            "for the in-process mock backend.",
            err=True,
        )
        sys.exit(EXIT_INFRASTRUCTURE)

    if config.json_output:
        payload = {
            "record": verdict_to_json_dict(run.record),
            "explanation": explanation_to_json_dict(run.explanation),
        }
        click.echo(canonical_json(payload), nl=False)
    else:
        explanation = run.explanation
        click.echo(f"verdict: {run.record.verdict.value}")
        click.echo(
            f"score: {run.record.score:.4f} (threshold {run.record.threshold}, "
            f"scorer {scorer.value}, pipeline {pipeline.value})"
        )
        click.echo(f"stage: {explanation.evidence.stage.value}")
        if explanation.generated_question:
            click.echo(f"question: {explanation.generated_question}")
        if explanation.question_fallback:
            click.echo("question: generation failed; fell back to the raw headline")
        click.echo("sources:")
        for url in explanation.source_urls:
            click.echo(f"  - {url}")
    sys.exit(EXIT_OK)


@main.command("eval")
@click.argument("dataset_path", type=click.Path(exists=True, dir_okay=False))
@_common_options
@click.option(
    "--dataset-format",
    type=click.Choice(["eval", "liar"]),
    default="eval",
    help="Input format: evaluation CSV or tab-separated statement corpus.",
)
@click.option(
    "--no-timing",
    is_flag=True,
    help="Omit wall-clock timing from the report so output is byte-reproducible.",
)
def eval_command(dataset_path: str, dataset_format: str, no_timing: bool, **kwargs) -> None:
    """Calibrate on a stratified slice of DATASET_PATH, evaluate on the rest."""
    try:
        config = _build_run_config(threshold=None, **kwargs)
        deps = _build_deps(config)
        loader = load_eval if dataset_format == "eval" else load_liar
        dataset = loader(dataset_path)
    except (VeritasError, ValueError, OSError, json.JSONDecodeError) as exc:
        raise click.ClickException(str(exc)) from exc

    combos = [(p, s) for p in config.pipelines for s in config.scorers]
    try:
        outcome = run_evaluation(
            dataset,
            combos,
            deps,
            calib_fraction=config.calib_fraction,
            seed=config.seed,
        )
    except RobotsDisallowedError as exc:
        click.echo(f"robots rules forbid a required fetch: {exc}", err=True)
        sys.exit(EXIT_INFRASTRUCTURE)
    except RetryableError as exc:
        click.echo(f"scoring backend unreachable: {exc}", err=True)
        sys.exit(EXIT_INFRASTRUCTURE)

    bundle = ReportBundle(
        metrics=outcome.metrics,
        agreement=outcome.agreement,
        timing=None if no_timing else outcome.timing,
        header={
            "dataset": dataset.name,
            "records": len(dataset),
            "calibration_fraction": config.calib_fraction,
            "calibration_size": len(outcome.calib_ids),
            "report_size": len(outcome.report_ids),
            "seed": config.seed,
            "thresholds": outcome.thresholds,
            "skipped_no_evidence": list(outcome.skipped_ids),
        },
    )
    rendered = emit_report(bundle, "json" if config.json_output else "markdown")
    click.echo(rendered, nl=False)
    if config.report_path:
        config.report_path.write_text(emit_report(bundle, "json"), encoding="utf-8")
        click.echo(f"report written to {config.report_path}", err=True)
    sys.exit(EXIT_OK)


@main.command("generate-evalset")
@click.argument("truths_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False, writable=True), required=True)
@click.option("--backend-url", default=None, help="SLM backend (http URL or mock:).")
@click.option(
    "--config", "config_file", type=click.Path(exists=True, dir_okay=False), default=None
)
def generate_evalset(
    truths_path: str, out: str, backend_url: Optional[str], config_file: Optional[str]
) -> None:
    """Pair each credible headline in TRUTHS_PATH with a generated fake one."""
    file_config = _load_config_file(config_file)
    backend = _resolve(backend_url, "VERITAS_BACKEND_URL", file_config, "backend_url", "mock:")
    slm = HttpSlmBackend(backend) if backend.startswith(("http://", "https://")) else MockSlmBackend()

    import csv as _csv

    with open(truths_path, encoding="utf-8", newline="") as handle:
        reader = _csv.DictReader(handle)
        if not reader.fieldnames or "headline" not in reader.fieldnames:
            raise click.ClickException(f"{truths_path} needs a 'headline' column")
        rows = list(reader)

    seen: set[str] = set()
    records: list[ClaimRecord] = []
    skipped: list[str] = []
    index = 0
    for row in rows:
        text = (row.get("headline") or "").strip()
        if not text:
            continue
        folded = text.lower()
        if folded in seen:
            click.echo(f"duplicate headline skipped: {text!r}", err=True)
            continue
        seen.add(folded)
        try:
            fake = generate_fake_headline(text, slm)
        except DegenerateGenerationError:
            skipped.append(text)
            continue
        except RetryableError as exc:
            click.echo(f"SLM backend unreachable: {exc}", err=True)
            sys.exit(EXIT_INFRASTRUCTURE)
        index += 1
        source = (row.get("source") or "").strip() or None
        domain = (row.get("domain") or "").strip() or None
        records.append(
            ClaimRecord(
                id=f"t-{index:04d}",
                text=text,
                label=BinaryLabel.RELIABLE,
                source=source,
                domain_tag=domain,
            )
        )
        records.append(
            ClaimRecord(
                id=f"f-{index:04d}",
                text=fake,
                label=BinaryLabel.UNRELIABLE,
                source=source,
                domain_tag=domain,
            )
        )
    dataset = Dataset(tuple(records), Path(out).stem, SourceFormat.EVAL_CSV)
    write_eval_csv(dataset, out)
    click.echo(f"wrote {len(records)} rows to {out}")
    for text in skipped:
        click.echo(f"degenerate generation, pair skipped: {text!r}", err=True)
    sys.exit(EXIT_OK)


@main.command("train-baseline")
@click.argument("liar_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--model", type=click.Choice(["nb", "logreg"]), required=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), required=True)
@click.option("--eval-csv", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option(
    "--test-tsv",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Official test split; when given, LIAR_PATH is used whole for training.",
)
@click.option("--seed", type=int, default=42)
@click.option("--train-frac", type=float, default=0.7, help="Train share of the 70:30 split.")
def train_baseline(
    liar_path: str,
    model: str,
    out: str,
    eval_csv: Optional[str],
    test_tsv: Optional[str],
    seed: int,
    train_frac: float,
) -> None:
    """Train a classical baseline on the statement corpus and report metrics."""
    try:
        dataset = load_liar(liar_path)
        if test_tsv:
            train, test = dataset, load_liar(test_tsv)
        else:
            train, test = split_dataset(dataset, train_frac, seed)
    except DatasetFormatError as exc:
        raise click.ClickException(str(exc)) from exc
    pre = Preprocessor()
    train_docs = pre.run_corpus([record.text for record in train.records])
    test_docs = pre.run_corpus([record.text for record in test.records])
    train_labels = train.labels()

    payload: dict[str, Any]
    if model == "nb":
        nb = train_nb(train_docs, train_labels)
        predictions = [predict_nb(nb, doc) for doc in test_docs]
        payload = nb.to_json_dict()
    else:
        tfidf = fit_tfidf(train_docs)
        vectors = [transform(tfidf, doc) for doc in train_docs]
        logreg = train_logreg(vectors, train_labels, dim=len(tfidf.vocabulary))
        predictions = [
            predict_logreg(logreg, transform(tfidf, doc)) for doc in test_docs
        ]
        payload = {"tfidf": tfidf.to_json_dict(), "model": logreg.to_json_dict()}
    Path(out).write_text(json.dumps(payload) + "\n", encoding="utf-8")

    report = compute_metrics(predictions, test.labels(), model_name=model)
    click.echo(emit_report(ReportBundle(metrics=(report,)), "markdown"), nl=False)

    if eval_csv:
        holdout = load_eval(eval_csv)
        holdout_docs = pre.run_corpus([record.text for record in holdout.records])
        if model == "nb":
            holdout_predictions = [predict_nb(nb, doc) for doc in holdout_docs]
        else:
            holdout_predictions = [
                predict_logreg(logreg, transform(tfidf, doc)) for doc in holdout_docs
            ]
        holdout_report = compute_metrics(
            holdout_predictions, holdout.labels(), model_name=f"{model}@{holdout.name}"
        )
        click.echo(emit_report(ReportBundle(metrics=(holdout_report,)), "markdown"), nl=False)
    sys.exit(EXIT_OK)


if __name__ == "__main__":  # pragma: no cover
    main()
