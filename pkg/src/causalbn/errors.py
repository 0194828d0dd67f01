"""Exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass, field


class CausalBnError(Exception):
    """Base class for all package errors."""


@dataclass
class ValidationIssue:
    """A single model validation failure.

    kind is a stable machine-readable tag, e.g. "Cycle", "MissingCpt",
    "UnknownParent", "RowNotNormalized", "DuplicateName", "BadStateCount",
    "BadRowCount", "UnknownVariable", "BadProbability".
    """

    kind: str
    message: str
    variable: str | None = None
    details: dict = field(default_factory=dict)

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


class InvalidNetworkError(CausalBnError):
    """Raised by compile() with the complete list of validation failures."""

    def __init__(self, issues: list[ValidationIssue]):
        self.issues = issues
        super().__init__("; ".join(str(i) for i in issues))


class UnknownVariableError(CausalBnError):
    pass


class UnknownStateError(CausalBnError):
    pass


class VarNotInScopeError(CausalBnError):
    pass


class TargetInEvidenceError(CausalBnError):
    pass


class ImpossibleEvidenceError(CausalBnError):
    """Conditioning evidence has probability zero."""


class OverlappingSetsError(CausalBnError):
    pass


class TooLargeError(CausalBnError):
    pass


class TemplateMismatchError(CausalBnError):
    pass
