"""The three verification pipelines: article, question-answer, and SLM.

Each run retrieves evidence, assembles a premise, scores it against the
headline with the selected scorer, and returns the verdict together with an
explanation payload carrying the retrieved knowledge and source links.
"""

from __future__ import annotations

import hashlib
import math
import time
from dataclasses import dataclass, field
from typing import Optional

from ..core import BinaryLabel, Pipeline, Scorer, VerdictRecord
from ..errors import QuestionGenFailure
from ..nli.backends import ConsistencyBackend, NliBackend
from ..nli.matrix import build_pair_matrix
from ..nli.scorers import ConvScorerConfig, factcc_classify, summac_conv_score, summac_zs_score
from ..nli.sentences import split_sentences
from ..retrieval.evidence import (
    EvidenceBundle,
    EvidenceCache,
    RetrievalConfig,
    RetrievalStrategy,
    retrieve_evidence,
)
from ..retrieval.provider import SearchProvider
from .slm import SlmBackend, generate_question


@dataclass(frozen=True)
class StageTimings:
    """Wall-clock seconds spent scraping and scoring, kept separate so
    scrape+score sums are reconstructible per pipeline."""

    scrape_seconds: float
    score_seconds: float

    def __post_init__(self) -> None:
        for name, value in (
            ("scrape_seconds", self.scrape_seconds),
            ("score_seconds", self.score_seconds),
        ):
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and non-negative")


@dataclass(frozen=True)
class ExplanationRecord:
    """Everything needed to audit a verdict: the retrieved knowledge, the
    premise actually scored, and the links it came from."""

    headline: str
    evidence: EvidenceBundle
    scorer: Scorer
    score: float
    verdict: BinaryLabel
    premise: str
    source_urls: tuple[str, ...]
    generated_question: Optional[str] = None
    question_fallback: bool = False

    def __post_init__(self) -> None:
        if self.source_urls != self.evidence.source_urls:
            raise ValueError("source_urls must be the distinct evidence passage URLs")


@dataclass(frozen=True)
class PipelineRun:
    record: VerdictRecord
    explanation: ExplanationRecord


def default_thresholds() -> dict[Scorer, float]:
    """Verdict cut points. The document-level scorer is fixed at 0.5; the
    matrix scorers default to 0 until calibration supplies a better value."""
    return {Scorer.FACTCC: 0.5, Scorer.SUMMAC_ZS: 0.0, Scorer.SUMMAC_CONV: 0.0}


@dataclass
class PipelineDeps:
    """Everything a pipeline needs, bundled so runs stay reentrant."""

    provider: SearchProvider
    nli_backend: NliBackend
    consistency_backend: ConsistencyBackend
    slm_backends: dict[Pipeline, SlmBackend] = field(default_factory=dict)
    retrieval: RetrievalConfig = field(default_factory=RetrievalConfig)
    conv_config: ConvScorerConfig = field(default_factory=ConvScorerConfig.default)
    thresholds: dict[Scorer, float] = field(default_factory=default_thresholds)
    premise_sentence_cap: int = 60
    evidence_cache: Optional[EvidenceCache] = None


def _retrieve(deps: PipelineDeps, query: str, strategy: RetrievalStrategy) -> EvidenceBundle:
    if deps.evidence_cache is not None:
        return deps.evidence_cache.get_or_retrieve(
            query, strategy, deps.provider, deps.retrieval
        )
    return retrieve_evidence(query, strategy, deps.provider, deps.retrieval)


def claim_id_for(headline: str) -> str:
    return hashlib.sha256(headline.encode("utf-8")).hexdigest()[:12]


def assemble_premise(evidence: EvidenceBundle, sentence_cap: int) -> str:
    """Concatenate passages in rank order (headings precede paragraphs within
    each source), separated by blank lines, capped to a sentence budget."""
    premise = "\n\n".join(text for _, text in evidence.passages)
    sentences = split_sentences(premise)
    if len(sentences) > sentence_cap:
        premise = " ".join(sentences[:sentence_cap])
    return premise


def _score_premise(
    premise: str, headline: str, scorer: Scorer, deps: PipelineDeps
) -> tuple[float, float]:
    """Score and the seconds spent scoring (backend calls included)."""
    started = time.perf_counter()
    if scorer is Scorer.FACTCC:
        score, _ = factcc_classify(premise, headline, deps.consistency_backend)
    else:
        matrix = build_pair_matrix(premise, headline, deps.nli_backend)
        if scorer is Scorer.SUMMAC_ZS:
            score = summac_zs_score(matrix)
        else:
            score = summac_conv_score(matrix, deps.conv_config)
    return score, time.perf_counter() - started


def _finish(
    headline: str,
    pipeline: Pipeline,
    scorer: Scorer,
    evidence: EvidenceBundle,
    deps: PipelineDeps,
    *,
    claim_id: Optional[str],
    generated_question: Optional[str] = None,
    question_fallback: bool = False,
) -> PipelineRun:
    premise = assemble_premise(evidence, deps.premise_sentence_cap)
    score, score_seconds = _score_premise(premise, headline, scorer, deps)
    threshold = deps.thresholds[scorer]
    verdict = BinaryLabel.RELIABLE if score >= threshold else BinaryLabel.UNRELIABLE
    record = VerdictRecord(
        claim_id=claim_id or claim_id_for(headline),
        pipeline=pipeline,
        scorer=scorer,
        score=score,
        threshold=threshold,
        verdict=verdict,
        evidence=evidence,
        timings=StageTimings(
            scrape_seconds=evidence.scrape_seconds, score_seconds=score_seconds
        ),
    )
    explanation = ExplanationRecord(
        headline=headline,
        evidence=evidence,
        scorer=scorer,
        score=score,
        verdict=verdict,
        premise=premise,
        source_urls=evidence.source_urls,
        generated_question=generated_question,
        question_fallback=question_fallback,
    )
    return PipelineRun(record=record, explanation=explanation)


def run_article_pipeline(
    headline: str,
    scorer: Scorer,
    deps: PipelineDeps,
    *,
    claim_id: Optional[str] = None,
) -> PipelineRun:
    """Scrape top-k articles for the raw headline and score their content."""
    if not headline.strip():
        raise ValueError("headline must be non-empty")
    evidence = _retrieve(deps, headline, RetrievalStrategy.ARTICLES_ONLY)
    return _finish(headline, Pipeline.ARTICLE, scorer, evidence, deps, claim_id=claim_id)


def run_question_answer_pipeline(
    headline: str,
    scorer: Scorer,
    deps: PipelineDeps,
    *,
    claim_id: Optional[str] = None,
) -> PipelineRun:
    """Quick answer, then related questions, then articles, for the headline."""
    if not headline.strip():
        raise ValueError("headline must be non-empty")
    evidence = _retrieve(deps, headline, RetrievalStrategy.QUICK_ANSWER_CHAIN)
    return _finish(
        headline, Pipeline.QUESTION_ANSWER, scorer, evidence, deps, claim_id=claim_id
    )


def run_slm_pipeline(
    headline: str,
    slm_kind: Pipeline,
    scorer: Scorer,
    deps: PipelineDeps,
    *,
    claim_id: Optional[str] = None,
) -> PipelineRun:
    """Turn the headline into a verification question, then run the
    question-answer chain on it. Question-generation failure degrades to the
    raw headline as the query, recorded in the explanation."""
    if not headline.strip():
        raise ValueError("headline must be non-empty")
    if slm_kind not in (Pipeline.SLM_MISTRAL, Pipeline.SLM_PHI3):
        raise ValueError(f"{slm_kind} is not an SLM pipeline")
    slm = deps.slm_backends.get(slm_kind)
    if slm is None:
        raise ValueError(f"no SLM backend configured for {slm_kind.value}")

    question: Optional[str]
    fallback = False
    try:
        question = generate_question(headline, slm)
        query = question
    except QuestionGenFailure:
        question = None
        fallback = True
        query = headline

    evidence = _retrieve(deps, query, RetrievalStrategy.QUICK_ANSWER_CHAIN)
    return _finish(
        headline,
        slm_kind,
        scorer,
        evidence,
        deps,
        claim_id=claim_id,
        generated_question=question,
        question_fallback=fallback,
    )
