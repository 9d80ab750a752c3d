"""Exception hierarchy shared by every stage of the pipeline."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


class DlpError(Exception):
    """Base class; ``span`` locates the offending input when known."""

    def __init__(self, message: str, span: Optional[SourceSpan] = None):
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self) -> str:
        if self.span is None:
            return self.message
        return f"{self.span}: {self.message}"


class KnowledgeBaseError(DlpError):
    """Parse or hierarchy validation failure (CLI exit code 1)."""


class ParseError(KnowledgeBaseError):
    pass


class UnknownObject(KnowledgeBaseError):
    def __init__(self, oid: str, span: Optional[SourceSpan] = None):
        super().__init__(f"unknown object '{oid}'", span)
        self.oid = oid


class CyclicHierarchy(KnowledgeBaseError):
    def __init__(self, cycle: list[str], span: Optional[SourceSpan] = None):
        super().__init__("cyclic hierarchy: " + " < ".join(cycle), span)
        self.cycle = cycle


class GroundingError(DlpError):
    """Safety or instantiation failure (CLI exit code 2)."""


class SafetyError(GroundingError):
    def __init__(self, variable: str, span: Optional[SourceSpan] = None):
        super().__init__(f"unsafe variable '{variable}'", span)
        self.variable = variable


class MissingMaxint(GroundingError):
    def __init__(self, span: Optional[SourceSpan] = None):
        super().__init__("#succ or #maxint used but no #maxint given (use '#maxint = n.' or -N=n)", span)


class TooLarge(DlpError):
    def __init__(self, atoms: int, bound: int):
        super().__init__(f"brute force over {atoms} atoms exceeds the bound of {bound}")
        self.atoms = atoms
        self.bound = bound


class TranslationError(DlpError):
    pass
