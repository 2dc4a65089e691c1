"""Exception hierarchy shared by every pipeline stage."""

from __future__ import annotations


class IsmTopsisError(ValueError):
    """Base class for all user-facing input and domain errors."""


class VocabularyError(IsmTopsisError):
    """Unknown linguistic term, relation symbol, orientation or cluster name."""


class DomainError(IsmTopsisError):
    """A value lies outside the domain an operation is defined on."""


class IncompleteInputError(IsmTopsisError):
    """A required judgment, rating or matrix entry is missing."""


class PartitionError(IsmTopsisError):
    """Level partitioning found no extractable category."""


class NormalizationError(IsmTopsisError):
    """A criterion column cannot be normalized (zero reference value)."""

    def __init__(self, message: str, criterion: str):
        super().__init__(message)
        self.criterion = criterion


class DegenerateAlternativeError(IsmTopsisError):
    """Both separation measures of an alternative are zero."""


class UndefinedConcordanceError(IsmTopsisError):
    """Kendall's W has a zero denominator."""


class ParseError(IsmTopsisError):
    """Malformed input file. Carries the source name and 1-based cell position."""

    def __init__(self, message: str, source: str = "<input>",
                 row: int | None = None, column: int | None = None):
        self.message = message
        self.source = source
        self.row = row
        self.column = column
        super().__init__(str(self))

    def __str__(self) -> str:
        where = self.source
        if self.row is not None:
            where += f": row {self.row}"
        if self.column is not None:
            where += f", column {self.column}"
        return f"{where}: {self.message}"


class IncompleteFileError(ParseError, IncompleteInputError):
    """An input file parsed cleanly but lacks required entries."""


class OutputError(IsmTopsisError):
    """Writing a report file failed."""

    def __init__(self, message: str, path: str):
        super().__init__(f"{path}: {message}")
        self.path = path
