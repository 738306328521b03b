"""Headline-to-verdict orchestration for the three verification pipelines."""

from .prompts import PromptName, PromptTemplate, load_prompt
from .runner import (
    ExplanationRecord,
    PipelineDeps,
    PipelineRun,
    StageTimings,
    run_article_pipeline,
    run_question_answer_pipeline,
    run_slm_pipeline,
)
from .slm import (
    HttpSlmBackend,
    MockSlmBackend,
    SlmBackend,
    generate_fake_headline,
    generate_question,
)

__all__ = [
    "ExplanationRecord",
    "HttpSlmBackend",
    "MockSlmBackend",
    "PipelineDeps",
    "PipelineRun",
    "PromptName",
    "PromptTemplate",
    "SlmBackend",
    "StageTimings",
    "generate_fake_headline",
    "generate_question",
    "load_prompt",
    "run_article_pipeline",
    "run_question_answer_pipeline",
    "run_slm_pipeline",
]
