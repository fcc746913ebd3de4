"""Protocol text front end: tokens, parser, pretty-printer, validation."""

from .lexer import LexError, tokenize
from .nodes import (
    END,
    ChoiceTarget,
    EndTarget,
    InlineTarget,
    LabeledTarget,
    MethodSig,
    NamedTarget,
    OptionTarget,
    StateBody,
    StateDef,
    Target,
    Transition,
    Typestate,
)
from .parser import ParseError, Parser, parse
from .render import render
from .tokens import (
    SourcePos,
    Span,
    Token,
    TokenKind,
    is_identifier,
    is_type_identifier,
)
from .validate import RESERVED_STATE, validate_ast

__all__ = [
    "END",
    "ChoiceTarget",
    "EndTarget",
    "InlineTarget",
    "LabeledTarget",
    "LexError",
    "MethodSig",
    "NamedTarget",
    "OptionTarget",
    "ParseError",
    "Parser",
    "RESERVED_STATE",
    "SourcePos",
    "Span",
    "StateBody",
    "StateDef",
    "Target",
    "Token",
    "TokenKind",
    "Transition",
    "Typestate",
    "is_identifier",
    "is_type_identifier",
    "parse",
    "render",
    "tokenize",
    "validate_ast",
]
