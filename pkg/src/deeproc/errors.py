"""Exception hierarchy.

Every error carries a stable ``code`` used by the CLI for exit statuses and
machine-parsable diagnostics.
"""

from __future__ import annotations


class DeepRocError(Exception):
    code = "DeepRocError"
    exit_status = 1


class SingleClassError(DeepRocError):
    code = "SingleClassError"
    exit_status = 3


class NonFiniteScoreError(DeepRocError, ValueError):
    code = "NonFiniteScoreError"
    exit_status = 4


class BoundsError(DeepRocError, ValueError):
    code = "BoundsError"
    exit_status = 5


class RangeError(DeepRocError, ValueError):
    code = "RangeError"
    exit_status = 5


class AlignmentError(DeepRocError, ValueError):
    code = "AlignmentError"
    exit_status = 5


class DegenerateError(DeepRocError):
    code = "DegenerateError"
    exit_status = 6


class SpecError(DeepRocError, ValueError):
    code = "SpecError"
    exit_status = 7


class PrevalenceError(DeepRocError, ValueError):
    code = "PrevalenceError"
    exit_status = 7


class ParameterError(DeepRocError, ValueError):
    code = "ParameterError"
    exit_status = 7


class PairingError(DeepRocError, ValueError):
    code = "PairingError"
    exit_status = 8


class ParseError(DeepRocError, ValueError):
    code = "ParseError"
    exit_status = 9

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class LabelError(ParseError):
    code = "LabelError"

    def __init__(self, message: str, labels: list[str] | None = None, line: int | None = None):
        super().__init__(message, line)
        self.labels = list(labels or [])


class EmptyFileError(ParseError):
    code = "EmptyFileError"


class IoError(DeepRocError, OSError):
    code = "IoError"
    exit_status = 10
