import pytest
from hypothesis import given, strategies as st

from typestate_doa.diagnostics import E_LEX
from typestate_doa.syntax import LexError, TokenKind, tokenize

from conftest import PROTOCOL_FIXTURES, fixture_text


def kinds(text):
    return [t.kind for t in tokenize(text)]


def test_empty_input_is_just_eof():
    assert kinds("") == [TokenKind.EOF]


def test_basic_protocol_token_stream():
    text = "typestate basic {\n begin = { void terminate(): end }\n}"
    assert kinds(text) == [
        TokenKind.KW_TYPESTATE, TokenKind.IDENT, TokenKind.LBRACE,
        TokenKind.IDENT, TokenKind.EQUALS, TokenKind.LBRACE,
        TokenKind.IDENT, TokenKind.IDENT, TokenKind.LPAREN, TokenKind.RPAREN,
        TokenKind.COLON, TokenKind.KW_END, TokenKind.RBRACE,
        TokenKind.RBRACE, TokenKind.EOF,
    ]
    texts = [t.text for t in tokenize(text)]
    assert texts[:3] == ["typestate", "basic", "{"]
    assert texts[6:8] == ["void", "terminate"]


def test_character_outside_alphabet():
    with pytest.raises(LexError) as exc:
        tokenize("@")
    diag = exc.value.diagnostics[0]
    assert diag.code == E_LEX
    assert (diag.location.line, diag.location.column) == (1, 1)


def test_lex_error_position_is_precise():
    with pytest.raises(LexError) as exc:
        tokenize("typestate x {\n  a ? b\n}")
    assert (exc.value.diagnostics[0].location.line,
            exc.value.diagnostics[0].location.column) == (2, 5)


def test_keywords_versus_identifiers():
    toks = tokenize("end ended typestate typestates")
    assert [t.kind for t in toks[:-1]] == [
        TokenKind.KW_END, TokenKind.IDENT, TokenKind.KW_TYPESTATE, TokenKind.IDENT]


def test_qualified_type_name_is_one_token():
    toks = tokenize("java.lang.Boolean")
    assert [t.kind for t in toks] == [TokenKind.IDENT, TokenKind.EOF]
    assert toks[0].text == "java.lang.Boolean"


def test_dangling_dot_is_rejected():
    with pytest.raises(LexError) as exc:
        tokenize("foo. bar")
    assert exc.value.diagnostics[0].location.column == 4


def test_comments_are_skipped():
    text = "// header\ntypestate /* inline */ x { } /* tail */"
    assert kinds(text) == [TokenKind.KW_TYPESTATE, TokenKind.IDENT,
                           TokenKind.LBRACE, TokenKind.RBRACE, TokenKind.EOF]


def test_unterminated_block_comment():
    with pytest.raises(LexError) as exc:
        tokenize("typestate x { /* oops")
    diag = exc.value.diagnostics[0]
    assert diag.code == E_LEX
    assert diag.location.column == 15


def test_dollar_and_underscore_identifiers():
    toks = tokenize("$x _y a$b")
    assert [t.text for t in toks[:-1]] == ["$x", "_y", "a$b"]
    assert all(t.kind is TokenKind.IDENT for t in toks[:-1])


@pytest.mark.parametrize("name", PROTOCOL_FIXTURES)
def test_token_spans_tile_the_fixture(name):
    text = fixture_text(name)
    data = text.encode("utf-8")
    cursor = 0
    for token in tokenize(text):
        start, end = token.span.start.offset, token.span.end.offset
        gap = data[cursor:start].decode("utf-8")
        assert gap.strip() == "" or "/" in gap  # whitespace or comments only
        assert data[start:end].decode("utf-8") == token.text
        cursor = end
    assert data[cursor:].decode("utf-8").strip() == ""


@given(st.text(max_size=200))
def test_tokenize_never_crashes(text):
    try:
        tokens = tokenize(text)
    except LexError as exc:
        assert exc.diagnostics[0].code == E_LEX
    else:
        assert tokens[-1].kind is TokenKind.EOF


def test_multibyte_offsets_count_bytes():
    # 'é' is two bytes in UTF-8; offsets are byte-based, columns char-based.
    with pytest.raises(LexError) as exc:
        tokenize("é@")
    pos = exc.value.diagnostics[0].location
    assert (pos.column, pos.offset) == (2, 2)
