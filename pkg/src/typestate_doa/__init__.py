"""Bidirectional conversion between typestate protocols and object automata.

The text side is `parse` / `render` / `validate_ast`; the automaton side is
`Doa` with `union`, `validate_doa`, and the equivalence oracle; `compile_ast`
and `decompile` translate between them; `interchange` holds the JSON and DOT
forms. `cli` and `service` wrap it all for batch and HTTP use.
"""

from .automaton import (
    Doa,
    END_STATE,
    MethodEdge,
    Reached,
    ResultEdge,
    RunOutcome,
    Stuck,
    Symbol,
    UnionConflictError,
    Word,
    union,
    validate_doa,
    with_implicit_end,
)
from .checks import full_check
from .compiler import FreshKind, NameRegistry, compile_ast, end_only
from .decompiler import decompile, emit_state_order
from .diagnostics import CATALOGUE, Diagnostic, DiagnosticError, Severity
from .equivalence import distinguishing_word, equivalent, format_word
from .interchange import (
    ast_from_json,
    ast_to_json,
    doa_from_json,
    doa_to_dot,
    doa_to_json,
)
from .syntax import (
    LexError,
    MethodSig,
    ParseError,
    Parser,
    SourcePos,
    Typestate,
    parse,
    render,
    tokenize,
    validate_ast,
)

__version__ = "0.1.0"

__all__ = [
    "CATALOGUE",
    "Diagnostic",
    "DiagnosticError",
    "Doa",
    "END_STATE",
    "FreshKind",
    "LexError",
    "MethodEdge",
    "MethodSig",
    "NameRegistry",
    "ParseError",
    "Parser",
    "Reached",
    "ResultEdge",
    "RunOutcome",
    "Severity",
    "SourcePos",
    "Stuck",
    "Symbol",
    "Typestate",
    "UnionConflictError",
    "Word",
    "ast_from_json",
    "ast_to_json",
    "compile_ast",
    "decompile",
    "distinguishing_word",
    "doa_from_json",
    "doa_to_dot",
    "doa_to_json",
    "emit_state_order",
    "end_only",
    "equivalent",
    "format_word",
    "full_check",
    "parse",
    "render",
    "tokenize",
    "union",
    "validate_ast",
    "validate_doa",
    "with_implicit_end",
]
