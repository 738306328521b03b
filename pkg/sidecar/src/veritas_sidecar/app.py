"""FastAPI surface: batch NLI scoring, consistency classification, generation.

Contracts: 400 for malformed or empty payloads, 413 for oversize batches,
503 while models are loading. Distributions are renormalized and checked
against the simplex before they leave the server, and temperature-0 decoding
plus hash-based mocks make identical requests return identical bodies.
"""

from __future__ import annotations

import enum
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .config import MAX_BATCH_SIZE, SIMPLEX_TOLERANCE, SidecarConfig
from .engines import InferenceEngine, MockEngine, TransformersEngine, make_engine


class NliPair(BaseModel):
    premise: str = Field(min_length=1)
    hypothesis: str = Field(min_length=1)


class NliBatchRequest(BaseModel):
    pairs: list[NliPair]


class NliDistributionModel(BaseModel):
    entail: float
    contradict: float
    neutral: float


class NliBatchResponse(BaseModel):
    distributions: list[NliDistributionModel]


class ConsistencyRequest(BaseModel):
    document: str = Field(min_length=1)
    claim: str = Field(min_length=1)


class ConsistencyResponse(BaseModel):
    score: float


class SlmTask(str, enum.Enum):
    QUESTION = "question"
    FAKE_HEADLINE = "fake_headline"


class SlmParams(BaseModel):
    temperature: float = 0.0
    max_new_tokens: int = 64


class SlmRequest(BaseModel):
    task: SlmTask
    headline: str = Field(min_length=1)
    params: Optional[SlmParams] = None


class SlmResponse(BaseModel):
    text: str


def _normalized_simplex(triple: tuple[float, float, float]) -> NliDistributionModel:
    entail, contradict, neutral = (max(0.0, v) for v in triple)
    total = entail + contradict + neutral
    if total <= 0:
        raise ValueError("degenerate distribution from engine")
    entail, contradict, neutral = entail / total, contradict / total, neutral / total
    if abs(entail + contradict + neutral - 1.0) > SIMPLEX_TOLERANCE:
        raise ValueError("simplex violated after normalization")
    return NliDistributionModel(entail=entail, contradict=contradict, neutral=neutral)


def create_app(
    config: SidecarConfig | None = None, engine: InferenceEngine | None = None
) -> FastAPI:
    config = config or SidecarConfig.from_env()
    engine = engine or make_engine(config)
    app = FastAPI(title="veritas-sidecar", version="0.1.0")

    @app.exception_handler(RequestValidationError)
    async def malformed_request(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    def loading_response() -> JSONResponse | None:
        if engine.ready():
            return None
        detail = "models are loading"
        if isinstance(engine, TransformersEngine) and engine.load_error():
            detail = f"model loading failed: {engine.load_error()}"
        return JSONResponse(status_code=503, content={"detail": detail})

    @app.get("/healthz")
    def healthz():
        payload = {
            "ready": engine.ready(),
            "mock": isinstance(engine, MockEngine),
            "models": {
                "nli": config.nli_model,
                "consistency": config.consistency_model,
                "slm": config.slm_model,
            },
        }
        if isinstance(engine, TransformersEngine) and engine.load_error():
            payload["error"] = engine.load_error()
        return payload

    @app.post("/v1/nli/batch", response_model=NliBatchResponse)
    def nli_batch(request: NliBatchRequest):
        if not request.pairs:
            return JSONResponse(status_code=400, content={"detail": "empty batch"})
        if len(request.pairs) > MAX_BATCH_SIZE:
            return JSONResponse(
                status_code=413,
                content={"detail": f"batch exceeds {MAX_BATCH_SIZE} pairs"},
            )
        unavailable = loading_response()
        if unavailable:
            return unavailable
        triples = engine.nli_batch(
            [(pair.premise, pair.hypothesis) for pair in request.pairs]
        )
        return NliBatchResponse(
            distributions=[_normalized_simplex(t) for t in triples]
        )

    @app.post("/v1/consistency", response_model=ConsistencyResponse)
    def consistency(request: ConsistencyRequest):
        unavailable = loading_response()
        if unavailable:
            return unavailable
        score = float(engine.consistency(request.document, request.claim))
        return ConsistencyResponse(score=min(1.0, max(0.0, score)))

    @app.post("/v1/slm/generate", response_model=SlmResponse)
    def slm_generate(request: SlmRequest):
        unavailable = loading_response()
        if unavailable:
            return unavailable
        text = engine.generate(request.task.value, request.headline)
        first_line = next(
            (line.strip() for line in text.splitlines() if line.strip()), ""
        )
        return SlmResponse(text=first_line)

    return app
