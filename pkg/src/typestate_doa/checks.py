"""One validation entry point per input kind, shared by the CLI and service.

For protocol text the full catalogue is: lexing/parsing, semantic AST
checks, and, when those pass, the automaton checks on the compiled
result, which is where reachability warnings come from.
"""

from __future__ import annotations

from .automaton import validate_doa
from .compiler import compile_ast
from .diagnostics import Diagnostic, DiagnosticError, has_errors
from .interchange import ast_from_json, doa_from_json
from .syntax import parse, validate_ast

KINDS = ("typestate", "ast", "doa")


def full_check(kind: str, text: str) -> list[Diagnostic]:
    """Run every applicable check; the result may be empty or warnings-only."""
    if kind == "typestate":
        try:
            protocol = parse(text)
        except DiagnosticError as exc:
            return exc.diagnostics
        diags = validate_ast(protocol)
        if not has_errors(diags):
            diags = diags + validate_doa(compile_ast(protocol))
        return diags
    if kind == "ast":
        try:
            protocol = ast_from_json(text)
        except DiagnosticError as exc:
            return exc.diagnostics
        return validate_doa(compile_ast(protocol))
    if kind == "doa":
        try:
            doa = doa_from_json(text)
        except DiagnosticError as exc:
            return exc.diagnostics
        return validate_doa(doa)
    raise ValueError(f"unknown input kind {kind!r}")
