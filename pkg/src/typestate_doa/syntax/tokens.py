"""Token types, source positions, and identifier classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..source import SourcePos, Span

__all__ = [
    "KEYWORDS", "PUNCTUATION", "SourcePos", "Span", "Token", "TokenKind",
    "is_ident_part", "is_ident_start", "is_identifier", "is_type_identifier",
]


class TokenKind(enum.Enum):
    KW_TYPESTATE = "typestate"
    KW_END = "end"
    IDENT = "identifier"
    LBRACE = "'{'"
    RBRACE = "'}'"
    LANGLE = "'<'"
    RANGLE = "'>'"
    LPAREN = "'('"
    RPAREN = "')'"
    COLON = "':'"
    COMMA = "','"
    EQUALS = "'='"
    EOF = "end of input"


@dataclass(frozen=True, slots=True)
class Token:
    kind: TokenKind
    text: str
    span: Span

    def __repr__(self) -> str:
        return f"Token({self.kind.name}, {self.text!r}, {self.span.start})"


KEYWORDS = {
    "typestate": TokenKind.KW_TYPESTATE,
    "end": TokenKind.KW_END,
}

PUNCTUATION = {
    "{": TokenKind.LBRACE,
    "}": TokenKind.RBRACE,
    "<": TokenKind.LANGLE,
    ">": TokenKind.RANGLE,
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
    ":": TokenKind.COLON,
    ",": TokenKind.COMMA,
    "=": TokenKind.EQUALS,
}


def is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_" or ch == "$"


def is_ident_part(ch: str) -> bool:
    return ch.isalnum() or ch == "_" or ch == "$"


def is_identifier(text: str) -> bool:
    """A plain identifier: usable as a state, method, or label name."""
    if not text or not is_ident_start(text[0]):
        return False
    return all(is_ident_part(ch) for ch in text[1:])


def is_type_identifier(text: str) -> bool:
    """A type name: a plain identifier or a dot-qualified chain of them."""
    parts = text.split(".")
    return all(is_identifier(p) for p in parts) if text else False
