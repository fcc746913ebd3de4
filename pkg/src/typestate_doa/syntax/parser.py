"""Recursive-descent parser for protocol text.

Every branch point is decided by the single current token, so the parser
never backtracks. The token cursor records how many distinct positions were
consulted between consumptions; `Parser.lookahead_high_water` stays at 1 and
tests assert it, as evidence of the one-token-lookahead discipline.

A state definition named ``end`` is accepted here and rejected later by
semantic validation (E_RESERVED_END), so that the reserved-name error is
reported at the right level instead of as a syntax error.
"""

from __future__ import annotations

from ..diagnostics import DiagnosticError, E_PARSE, error
from .lexer import tokenize
from .nodes import (
    END,
    ChoiceTarget,
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
from .tokens import Token, TokenKind


class ParseError(DiagnosticError):
    pass


class _Cursor:
    def __init__(self, tokens: list[Token]):
        self._tokens = tokens
        self._pos = 0
        self._consulted: set[int] = set()
        self.high_water = 0

    def peek(self) -> Token:
        self._consulted.add(self._pos)
        self.high_water = max(self.high_water, len(self._consulted))
        return self._tokens[self._pos]

    def advance(self) -> Token:
        tok = self._tokens[self._pos]
        if tok.kind is not TokenKind.EOF:
            self._pos += 1
        self._consulted.clear()
        return tok


MAX_NESTING = 64  # inline-state depth; beyond this is hostile input, not a protocol


class Parser:
    def __init__(self, text: str):
        self._cursor = _Cursor(tokenize(text))
        self._depth = 0

    @property
    def lookahead_high_water(self) -> int:
        """Largest number of distinct positions consulted at one decision."""
        return self._cursor.high_water

    def parse(self) -> Typestate:
        self._expect(TokenKind.KW_TYPESTATE)
        name = self._plain_ident("protocol name")
        self._expect(TokenKind.LBRACE)
        states = []
        while self._cursor.peek().kind in (TokenKind.IDENT, TokenKind.KW_END):
            states.append(self._state_def())
        self._expect(TokenKind.RBRACE)
        self._expect(TokenKind.EOF)
        return Typestate(name, tuple(states))

    # ── Productions ─────────────────────────────────────────────

    def _state_def(self) -> StateDef:
        tok = self._cursor.peek()  # IDENT or the reserved `end`, per caller
        if tok.kind is TokenKind.IDENT and "." in tok.text:
            raise self._unexpected(tok, "identifier",
                                   note="qualified name not allowed as state name")
        self._cursor.advance()
        self._expect(TokenKind.EQUALS)
        return StateDef(tok.text, self._state_body())

    def _state_body(self) -> StateBody:
        opening = self._expect(TokenKind.LBRACE)
        self._depth += 1
        if self._depth > MAX_NESTING:
            raise ParseError([error(
                E_PARSE, f"states nested deeper than {MAX_NESTING} levels",
                opening.span.start)])
        transitions = []
        if self._cursor.peek().kind is TokenKind.IDENT:
            transitions.append(self._transition())
            while self._cursor.peek().kind is TokenKind.COMMA:
                self._cursor.advance()
                transitions.append(self._transition())
        self._expect(TokenKind.RBRACE)
        self._depth -= 1
        return StateBody(tuple(transitions))

    def _transition(self) -> Transition:
        return_type = self._type_ident()
        method = self._plain_ident("method name")
        self._expect(TokenKind.LPAREN)
        params = []
        if self._cursor.peek().kind is TokenKind.IDENT:
            params.append(self._type_ident())
            while self._cursor.peek().kind is TokenKind.COMMA:
                self._cursor.advance()
                params.append(self._type_ident())
        self._expect(TokenKind.RPAREN)
        self._expect(TokenKind.COLON)
        return Transition(MethodSig(return_type, method, tuple(params)), self._target())

    def _target(self) -> Target:
        tok = self._cursor.peek()
        if tok.kind is TokenKind.KW_END:
            self._cursor.advance()
            return END
        if tok.kind is TokenKind.IDENT:
            return NamedTarget(self._plain_ident("state name"))
        if tok.kind is TokenKind.LBRACE:
            return InlineTarget(self._state_body())
        if tok.kind is TokenKind.LANGLE:
            self._cursor.advance()
            options = [self._labeled_target()]
            while self._cursor.peek().kind is TokenKind.COMMA:
                self._cursor.advance()
                options.append(self._labeled_target())
            self._expect(TokenKind.RANGLE)
            return ChoiceTarget(tuple(options))
        raise self._unexpected(tok, "'end'", "identifier", "'{'", "'<'")

    def _labeled_target(self) -> LabeledTarget:
        label = self._plain_ident("label")
        self._expect(TokenKind.COLON)
        tok = self._cursor.peek()
        target: OptionTarget
        if tok.kind is TokenKind.KW_END:
            self._cursor.advance()
            target = END
        elif tok.kind is TokenKind.IDENT:
            target = NamedTarget(self._plain_ident("state name"))
        elif tok.kind is TokenKind.LBRACE:
            target = InlineTarget(self._state_body())
        else:
            raise self._unexpected(tok, "'end'", "identifier", "'{'")
        return LabeledTarget(label, target)

    # ── Token helpers ───────────────────────────────────────────

    def _expect(self, kind: TokenKind) -> Token:
        tok = self._cursor.peek()
        if tok.kind is not kind:
            raise self._unexpected(tok, kind.value)
        return self._cursor.advance()

    def _plain_ident(self, role: str) -> str:
        tok = self._cursor.peek()
        if tok.kind is not TokenKind.IDENT:
            raise self._unexpected(tok, "identifier")
        if "." in tok.text:
            raise self._unexpected(tok, "identifier",
                                   note=f"qualified name not allowed as {role}")
        self._cursor.advance()
        return tok.text

    def _type_ident(self) -> str:
        tok = self._cursor.peek()
        if tok.kind is not TokenKind.IDENT:
            raise self._unexpected(tok, "type name")
        return self._cursor.advance().text

    def _unexpected(self, tok: Token, *expected: str, note: str = "") -> ParseError:
        found = tok.text or "end of input"
        message = f"expected {' or '.join(expected)} but found {found!r}"
        if note:
            message += f" ({note})"
        return ParseError([error(E_PARSE, message, tok.span.start)])


def parse(text: str) -> Typestate:
    """Parse protocol text into an AST.

    Raises ParseError/LexError (DiagnosticError subclasses) with the
    offending position and the expected token set on malformed input.
    """
    return Parser(text).parse()
