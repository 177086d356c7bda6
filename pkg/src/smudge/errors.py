"""Exception taxonomy. The CLI maps these onto its exit codes."""

from __future__ import annotations


class SmudgeError(Exception):
    """Base class for all engine errors."""


class ValidationError(SmudgeError):
    """Bad request: unknown column, bad fraction, unsupported kind, malformed config."""


class ParseError(ValidationError):
    """CSV structure problem (ragged rows, duplicate header names)."""


class CellParseError(ValidationError):
    """A cell token does not parse under its declared schema."""

    def __init__(self, message: str, row: int | None = None, column: str | None = None):
        super().__init__(message)
        self.row = row
        self.column = column


class InferenceError(ValidationError):
    """Schema inference impossible (all cells null)."""


class StatsError(ValidationError):
    """Statistics requested over zero non-null cells."""


class DomainError(ValidationError):
    """Column domain unusable for the family (single category, sigma = 0, wrong arity)."""


class EmptyTargetError(ValidationError):
    """Targeted duplication matched no rows."""


class CapacityError(SmudgeError):
    """Fewer eligible rows than the requested injection count."""

    def __init__(self, message: str, requested: int = 0, eligible: int = 0):
        super().__init__(message)
        self.requested = requested
        self.eligible = eligible


class ModeError(SmudgeError):
    """New/extended mode rules violated (already contaminated, target below existing)."""


class ManifestError(SmudgeError):
    """Manifest integrity violated (overlapping rows for one scope/family)."""


class FingerprintMismatch(SmudgeError):
    """Manifest fingerprint does not bind to the given CSV."""


class WriteError(SmudgeError):
    """I/O failure while writing outputs."""
