"""Exception types shared across the package."""

from __future__ import annotations

from enum import Enum


class PenguError(Exception):
    """Base class for all errors raised by this package."""


class ProbabilityOutOfRangeError(PenguError):
    """Probability annotation outside the open interval (0, 1)."""


class DuplicateAxiomError(PenguError):
    """An axiom with an identical payload is already in the knowledge base."""

    def __init__(self, message: str, existing_id: int | None = None):
        super().__init__(message)
        self.existing_id = existing_id


class UnknownAxiomIdError(PenguError):
    """Axiom id not present in the knowledge base."""


class FreshAxiomPresentError(PenguError):
    """Serialization refused: the KB contains internally injected query axioms."""


class ParseErrorKind(str, Enum):
    SYNTAX = "Syntax"
    BAD_PROBABILITY = "BadProbability"
    DUPLICATE_AXIOM = "DuplicateAxiom"
    BAD_NAME = "BadName"


class ParseError(PenguError):
    """Input text rejected; `line` and `column` are 1-based and point at the offence."""

    def __init__(self, line: int, column: int, kind: ParseErrorKind, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.kind = kind
        self.message = message


class ResourceLimitError(PenguError):
    """Rule-application budget exceeded during a tableau run."""


class TooLargeError(PenguError):
    """Input exceeds the size guard of a brute-force oracle."""


class ForeignRefError(PenguError):
    """BDD reference used with a manager it does not belong to."""


class UnmappedAxiomError(PenguError):
    """Justification mentions an axiom id with neither a variable nor a certain marker."""


class MissingWeightError(PenguError):
    """Weighted model counting reached a variable without a weight."""


class InternalInvariantError(PenguError):
    """An internal consistency check failed; indicates a bug, not bad input."""
