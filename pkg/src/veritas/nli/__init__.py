"""Sentence-level consistency scoring: pair matrices, reductions, calibration."""

from .backends import (
    ConsistencyBackend,
    HashConsistencyBackend,
    HashNliBackend,
    HttpConsistencyBackend,
    HttpNliBackend,
    LexicalConsistencyBackend,
    LexicalNliBackend,
    NliBackend,
)
from .calibration import CalibrationResult, calibrate_threshold
from .matrix import NliDistribution, PairMatrix, build_pair_matrix
from .scorers import (
    ConvScorerConfig,
    factcc_classify,
    fit_conv_weights,
    summac_conv_score,
    summac_zs_score,
)
from .sentences import split_sentences

__all__ = [
    "CalibrationResult",
    "ConsistencyBackend",
    "ConvScorerConfig",
    "HashConsistencyBackend",
    "HashNliBackend",
    "HttpConsistencyBackend",
    "HttpNliBackend",
    "LexicalConsistencyBackend",
    "LexicalNliBackend",
    "NliBackend",
    "NliDistribution",
    "PairMatrix",
    "build_pair_matrix",
    "calibrate_threshold",
    "factcc_classify",
    "fit_conv_weights",
    "split_sentences",
    "summac_conv_score",
    "summac_zs_score",
]
