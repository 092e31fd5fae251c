"""Shared exception types and the diagnostic record for recoverable defects."""

from dataclasses import dataclass


class SvcMinerError(Exception):
    """Base class for errors raised by this package."""


class FormatError(SvcMinerError):
    """Malformed input data (CoNLL-U or alignment file)."""

    def __init__(self, message, line_no=None, source=""):
        self.message = message
        self.line_no = line_no
        self.source = source
        where = source or "input"
        if line_no is not None:
            where = f"{where}:{line_no}"
        super().__init__(f"{where}: {message}")


class EmptyUniverseError(SvcMinerError):
    """A statistical sample (instance universe) came out empty."""


class PipelineConsistencyError(SvcMinerError):
    """A lookup failed that earlier pipeline stages are supposed to guarantee."""


@dataclass(frozen=True, slots=True)
class Diagnostic:
    """One recoverable input defect, pinned to a source line."""

    source: str
    line_no: int
    message: str

    def __str__(self):
        return f"{self.source}:{self.line_no}: {self.message}"
