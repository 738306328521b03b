"""Environment-driven sidecar configuration.

Mock mode (VERITAS_SIDECAR_MOCK=1) serves deterministic hash-based outputs
with no model weights, which is what the verification engine's hermetic test
suite points at. Model identifiers are configurable; the generation default
is the small instruct model family the pipelines expect, and the NLI default
is a cross-encoder substitution documented in the README.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

DEFAULT_NLI_MODEL = "tals/albert-xlarge-vitaminc-mnli"
DEFAULT_CONSISTENCY_MODEL = "manueldeprada/FactCC"
DEFAULT_SLM_MODEL = "microsoft/Phi-3-mini-4k-instruct"

MAX_BATCH_SIZE = 256
SIMPLEX_TOLERANCE = 1e-6


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in ("1", "true", "yes", "on")


@dataclass(frozen=True)
class SidecarConfig:
    mock: bool = False
    seed: int = 0
    nli_model: str = DEFAULT_NLI_MODEL
    consistency_model: str = DEFAULT_CONSISTENCY_MODEL
    slm_model: str = DEFAULT_SLM_MODEL
    max_new_tokens: int = 64
    device: str = "cpu"

    @classmethod
    def from_env(cls) -> "SidecarConfig":
        return cls(
            mock=_env_flag("VERITAS_SIDECAR_MOCK"),
            seed=int(os.environ.get("VERITAS_SIDECAR_SEED", "0")),
            nli_model=os.environ.get("VERITAS_NLI_MODEL", DEFAULT_NLI_MODEL),
            consistency_model=os.environ.get(
                "VERITAS_CONSISTENCY_MODEL", DEFAULT_CONSISTENCY_MODEL
            ),
            slm_model=os.environ.get("VERITAS_SLM_MODEL", DEFAULT_SLM_MODEL),
            max_new_tokens=int(os.environ.get("VERITAS_SLM_MAX_NEW_TOKENS", "64")),
            device=os.environ.get("VERITAS_SIDECAR_DEVICE", "cpu"),
        )
