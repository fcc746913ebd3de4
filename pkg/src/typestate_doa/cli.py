"""Batch command-line interface: compile, decompile, check, equiv, serve.

Exit codes: 0 success, 1 error diagnostics (or inequivalence), 2 usage
errors. Diagnostics go to standard error as ``file:line:col:
severity[CODE]: message``; ANSI color follows the TYPESTATE_COLOR
environment variable (1 on, 0 off, otherwise on for terminals).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .automaton import validate_doa
from .checks import KINDS, full_check
from .compiler import compile_ast
from .decompiler import decompile
from .diagnostics import Diagnostic, DiagnosticError, Severity, has_errors
from .equivalence import distinguishing_word, format_word
from .interchange import (
    ast_from_json,
    ast_to_json,
    doa_from_json,
    doa_to_dot,
    doa_to_json,
)
from .syntax import parse, render, validate_ast
from .syntax.tokens import SourcePos, is_identifier

_RED = "\x1b[31m"
_YELLOW = "\x1b[33m"
_RESET = "\x1b[0m"


def _use_color() -> bool:
    flag = os.environ.get("TYPESTATE_COLOR")
    if flag == "1":
        return True
    if flag == "0":
        return False
    return sys.stderr.isatty()


def _print_diagnostics(path: str, diagnostics: list[Diagnostic]) -> None:
    color = _use_color()
    for diag in diagnostics:
        prefix = path
        if isinstance(diag.location, SourcePos):
            prefix += f":{diag.location.line}:{diag.location.column}"
        severity = diag.severity.value
        if color:
            tint = _RED if diag.severity is Severity.ERROR else _YELLOW
            severity = f"{tint}{severity}{_RESET}"
        suffix = ""
        if isinstance(diag.location, str) and diag.location:
            suffix = f" [{diag.location}]"
        print(f"{prefix}: {severity}[{diag.code}]: {diag.message}{suffix}",
              file=sys.stderr)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror or exc}") from exc


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _infer_kind(path: str) -> str:
    name = Path(path).name
    if name.endswith(".protocol"):
        return "typestate"
    if name.endswith(".ast.json"):
        return "ast"
    if name.endswith(".json"):
        return "doa"
    raise _Usage(f"cannot infer input kind of {path}; pass --kind")


class _Usage(Exception):
    pass


# ── Subcommands ─────────────────────────────────────────────────


def _cmd_compile(args) -> int:
    text = _read(args.input)
    try:
        protocol = parse(text)
    except DiagnosticError as exc:
        _print_diagnostics(args.input, exc.diagnostics)
        return 1
    diags = validate_ast(protocol)
    if has_errors(diags):
        _print_diagnostics(args.input, diags)
        return 1
    if args.ast:
        _write_output(ast_to_json(protocol), args.out)
        return 0
    doa = compile_ast(protocol)
    _print_diagnostics(args.input, validate_doa(doa))  # warnings only here
    if args.format == "dot":
        _write_output(doa_to_dot(doa), args.out)
    else:
        _write_output(doa_to_json(doa), args.out)
    return 0


def _cmd_decompile(args) -> int:
    name = args.name
    if name is None:
        stem = Path(args.input).name
        for suffix in (".json", ".doa"):
            stem = stem.removesuffix(suffix)
        if not is_identifier(stem) or stem in ("typestate", "end"):
            raise _Usage(f"file stem {stem!r} is not a protocol name; pass --name")
        name = stem
    text = _read(args.input)
    try:
        doa = doa_from_json(text)
        protocol = decompile(name, doa)
    except DiagnosticError as exc:
        _print_diagnostics(args.input, exc.diagnostics)
        return 1
    _write_output(render(protocol) + "\n", args.out)
    return 0


def _cmd_check(args) -> int:
    kind = args.kind or _infer_kind(args.input)
    diagnostics = full_check(kind, _read(args.input))
    _print_diagnostics(args.input, diagnostics)
    return 1 if has_errors(diagnostics) else 0


def _load_automaton(path: str, kind: str | None):
    kind = kind or _infer_kind(path)
    text = _read(path)
    if kind == "typestate":
        protocol = parse(text)
        diags = validate_ast(protocol)
        if has_errors(diags):
            raise DiagnosticError(diags)
        return compile_ast(protocol)
    if kind == "ast":
        return compile_ast(ast_from_json(text))
    return doa_from_json(text)


def _cmd_equiv(args) -> int:
    automata = []
    for path, kind in ((args.first, args.kind_a), (args.second, args.kind_b)):
        try:
            automata.append(_load_automaton(path, kind))
        except DiagnosticError as exc:
            _print_diagnostics(path, exc.diagnostics)
            return 2
    word = distinguishing_word(*automata)
    if word is None:
        print("equivalent")
        return 0
    print(f"distinguished by: {format_word(word) or 'ε'}")
    return 1


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    port = args.port
    if port is None:
        port = int(os.environ.get("TYPESTATE_PORT", "8080"))
    if args.ui and not Path(args.ui).is_dir():
        raise _Usage(f"--ui directory {args.ui} does not exist")
    uvicorn.run(create_app(ui_dir=args.ui), host=args.host, port=port)
    return 0


# ── Argument parsing ────────────────────────────────────────────


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="typestate-doa",
        description="Convert between typestate protocols and object automata.")
    sub = parser.add_subparsers(dest="command", required=True)

    compile_ = sub.add_parser("compile", help="protocol text to automaton (or AST)")
    compile_.add_argument("input", help="a .protocol file")
    compile_.add_argument("--out", help="output path (default: stdout)")
    group = compile_.add_mutually_exclusive_group()
    group.add_argument("--format", choices=("doa-json", "dot"), default="doa-json")
    group.add_argument("--ast", action="store_true",
                       help="emit the AST document instead of the automaton")
    compile_.set_defaults(func=_cmd_compile)

    decompile_ = sub.add_parser("decompile", help="automaton document to protocol text")
    decompile_.add_argument("input", help="a .doa.json file")
    decompile_.add_argument("--name", help="protocol name (default: file stem)")
    decompile_.add_argument("--out", help="output path (default: stdout)")
    decompile_.set_defaults(func=_cmd_decompile)

    check = sub.add_parser("check", help="report all diagnostics for an input")
    check.add_argument("input")
    check.add_argument("--kind", choices=KINDS)
    check.set_defaults(func=_cmd_check)

    equiv = sub.add_parser("equiv", help="compare the languages of two inputs")
    equiv.add_argument("first")
    equiv.add_argument("second")
    equiv.add_argument("--kind-a", choices=KINDS)
    equiv.add_argument("--kind-b", choices=KINDS)
    equiv.set_defaults(func=_cmd_equiv)

    serve = sub.add_parser("serve", help="run the conversion service")
    serve.add_argument("--port", type=int, default=None,
                       help="listen port (default: $TYPESTATE_PORT or 8080)")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--ui", help="also serve a built editor bundle from this directory")
    serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"typestate-doa: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
