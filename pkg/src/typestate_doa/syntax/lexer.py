"""Lexer for protocol text.

The token alphabet is the keywords ``typestate`` and ``end``, identifiers
(dot-qualified for type names), and the punctuation ``{ } < > ( ) : , =``.
``//`` line comments and ``/* */`` block comments are skipped as whitespace.
"""

from __future__ import annotations

from ..diagnostics import DiagnosticError, E_LEX, error
from .tokens import (
    KEYWORDS,
    PUNCTUATION,
    SourcePos,
    Span,
    Token,
    TokenKind,
    is_ident_part,
    is_ident_start,
)


class LexError(DiagnosticError):
    pass


class _Scanner:
    """Tracks line/column/byte-offset while walking the text one char at a time."""

    def __init__(self, text: str):
        self.text = text
        self.index = 0
        self.line = 1
        self.column = 1
        self.offset = 0  # byte offset into the UTF-8 encoding

    def at_end(self) -> bool:
        return self.index >= len(self.text)

    def peek(self, ahead: int = 0) -> str:
        i = self.index + ahead
        return self.text[i] if i < len(self.text) else ""

    def pos(self) -> SourcePos:
        return SourcePos(self.line, self.column, self.offset)

    def advance(self) -> str:
        ch = self.text[self.index]
        self.index += 1
        self.offset += len(ch.encode("utf-8"))
        if ch == "\n":
            self.line += 1
            self.column = 1
        else:
            self.column += 1
        return ch


def tokenize(text: str) -> list[Token]:
    """Split protocol text into tokens, ending with an EOF token.

    Token spans tile the input: the gaps between consecutive tokens contain
    only whitespace and comments. Raises LexError (code E_LEX) on a character
    outside the alphabet or an unterminated block comment.
    """
    sc = _Scanner(text)
    tokens: list[Token] = []
    while True:
        _skip_trivia(sc)
        if sc.at_end():
            break
        start = sc.pos()
        ch = sc.peek()
        if ch in PUNCTUATION:
            sc.advance()
            tokens.append(Token(PUNCTUATION[ch], ch, Span(start, sc.pos())))
        elif is_ident_start(ch):
            text_ = _scan_identifier(sc)
            kind = KEYWORDS.get(text_, TokenKind.IDENT)
            tokens.append(Token(kind, text_, Span(start, sc.pos())))
        else:
            raise LexError([error(E_LEX, f"unexpected character {ch!r}", start)])
    eof_pos = sc.pos()
    tokens.append(Token(TokenKind.EOF, "", Span(eof_pos, eof_pos)))
    return tokens


def _skip_trivia(sc: _Scanner) -> None:
    while not sc.at_end():
        ch = sc.peek()
        if ch.isspace():
            sc.advance()
        elif ch == "/" and sc.peek(1) == "/":
            while not sc.at_end() and sc.peek() != "\n":
                sc.advance()
        elif ch == "/" and sc.peek(1) == "*":
            opened_at = sc.pos()
            sc.advance()
            sc.advance()
            while not (sc.peek() == "*" and sc.peek(1) == "/"):
                if sc.at_end():
                    raise LexError([error(E_LEX, "unterminated block comment", opened_at)])
                sc.advance()
            sc.advance()
            sc.advance()
        else:
            return


def _scan_identifier(sc: _Scanner) -> str:
    chars = [sc.advance()]
    while True:
        while not sc.at_end() and is_ident_part(sc.peek()):
            chars.append(sc.advance())
        # Qualified type names: consume '.' only when an identifier follows,
        # so a stray trailing dot is reported at the dot itself.
        if sc.peek() == "." and is_ident_start(sc.peek(1)):
            chars.append(sc.advance())
            chars.append(sc.advance())
        else:
            return "".join(chars)
