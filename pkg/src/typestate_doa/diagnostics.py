"""Machine-readable diagnostics shared by the parser, validators, and tools."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

from .source import SourcePos


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"


# Lexing / parsing
E_LEX = "E_LEX"
E_PARSE = "E_PARSE"

# Protocol (AST) validation
E_RESERVED_END = "E_RESERVED_END"
E_UNDEFINED_STATE = "E_UNDEFINED_STATE"
E_DUP_STATE = "E_DUP_STATE"
E_DUP_TRANSITION = "E_DUP_TRANSITION"
E_DUP_LABEL = "E_DUP_LABEL"
E_EMPTY_CHOICE = "E_EMPTY_CHOICE"

# Automaton validation
E_UNDEFINED_TARGET = "E_UNDEFINED_TARGET"
E_CHOICE_NO_RESULTS = "E_CHOICE_NO_RESULTS"
E_CHOICE_TO_CHOICE = "E_CHOICE_TO_CHOICE"
E_NONDETERMINISTIC = "E_NONDETERMINISTIC"
E_FINAL_NOT_SINK = "E_FINAL_NOT_SINK"
E_INITIAL_IS_END = "E_INITIAL_IS_END"
E_UNION_CONFLICT = "E_UNION_CONFLICT"
W_UNREACHABLE = "W_UNREACHABLE"

# Interchange documents
E_JSON_SYNTAX = "E_JSON_SYNTAX"
E_JSON_SCHEMA = "E_JSON_SCHEMA"

#: Every code a Diagnostic may carry.
CATALOGUE = frozenset({
    E_LEX, E_PARSE,
    E_RESERVED_END, E_UNDEFINED_STATE, E_DUP_STATE, E_DUP_TRANSITION,
    E_DUP_LABEL, E_EMPTY_CHOICE,
    E_UNDEFINED_TARGET, E_CHOICE_NO_RESULTS, E_CHOICE_TO_CHOICE,
    E_NONDETERMINISTIC, E_FINAL_NOT_SINK, E_INITIAL_IS_END,
    E_UNION_CONFLICT, W_UNREACHABLE,
    E_JSON_SYNTAX, E_JSON_SCHEMA,
})

#: A diagnostic's anchor: a position in protocol text, or a textual
#: reference to the offending element (state, transition, JSON pointer).
Location = Union[SourcePos, str, None]


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    message: str
    location: Location = None

    def __post_init__(self) -> None:
        if self.code not in CATALOGUE:
            raise ValueError(f"unknown diagnostic code {self.code!r}")

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def __str__(self) -> str:
        where = ""
        if isinstance(self.location, SourcePos):
            where = f"{self.location.line}:{self.location.column}: "
        elif isinstance(self.location, str):
            where = f"{self.location}: "
        return f"{where}{self.severity.value}[{self.code}]: {self.message}"


def error(code: str, message: str, location: Location = None) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, message, location)


def warning(code: str, message: str, location: Location = None) -> Diagnostic:
    return Diagnostic(Severity.WARNING, code, message, location)


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.is_error for d in diagnostics)


class DiagnosticError(Exception):
    """Raised by operations whose input is rejected with diagnostics.

    Carries the full diagnostic list (warnings included); at least one
    entry has error severity.
    """

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics if d.is_error)
                         or "; ".join(str(d) for d in self.diagnostics))
