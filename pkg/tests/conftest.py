from __future__ import annotations

from pathlib import Path

import pytest

from typestate_doa import compile_ast, parse

FIXTURES = Path(__file__).parent / "fixtures"

PROTOCOL_FIXTURES = (
    "basic.protocol",
    "drone_v1.protocol",
    "drone_v2.protocol",
    "drone_shutdown.protocol",
    "drone_full.protocol",
)


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def fixture_text(name: str) -> str:
    return fixture_path(name).read_text(encoding="utf-8")


@pytest.fixture
def drone_v1():
    return compile_ast(parse(fixture_text("drone_v1.protocol")))


@pytest.fixture
def drone_v2():
    return compile_ast(parse(fixture_text("drone_v2.protocol")))


@pytest.fixture
def basic():
    return compile_ast(parse(fixture_text("basic.protocol")))
