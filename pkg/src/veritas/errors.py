"""Exception types shared across the package."""

from __future__ import annotations


class VeritasError(Exception):
    """Base class for all package-specific failures."""


class DatasetFormatError(VeritasError):
    """A dataset file could not be parsed; the message names the offending rows."""


class NoEvidenceError(VeritasError):
    """Every retrieval stage came back empty for a query."""

    def __init__(self, query: str, stages_tried: tuple[str, ...]):
        self.query = query
        self.stages_tried = stages_tried
        super().__init__(
            f"no evidence found for {query!r}; stages tried: {', '.join(stages_tried)}"
        )


class RetryableError(VeritasError):
    """A transient failure that persisted past the configured retries."""


class RobotsDisallowedError(VeritasError):
    """A fetch was refused because robots rules disallow the path."""


class BackendContractError(VeritasError):
    """A scoring backend returned a payload that violates its contract."""


class QuestionGenFailure(VeritasError):
    """The SLM produced output with no question in it."""


class DegenerateGenerationError(VeritasError):
    """The SLM kept echoing its input instead of perturbing it."""


class CalibrationError(VeritasError):
    """Threshold calibration was asked to run on degenerate inputs."""


class TrainingError(VeritasError):
    """Baseline training failed (single-class data, divergence, empty corpus)."""


class ReportFormatError(VeritasError):
    """An unknown report output format was requested."""
