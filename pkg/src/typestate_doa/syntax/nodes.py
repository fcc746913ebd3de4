"""Immutable AST for typestate protocols.

A protocol is a named list of state definitions. Each state's body lists
method transitions; a transition's target is the end state, a named state,
an anonymous inline state, or an internal choice over result labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True, slots=True)
class MethodSig:
    """A method-alphabet symbol: return type, name, and parameter types.

    Two signatures are the same symbol only when all three parts agree;
    call-site duplicate detection keys on (name, param_types) alone.
    """

    return_type: str
    name: str
    param_types: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{self.return_type} {self.name}({', '.join(self.param_types)})"

    @property
    def call_key(self) -> tuple[str, tuple[str, ...]]:
        return (self.name, self.param_types)


@dataclass(frozen=True, slots=True)
class EndTarget:
    """Transition into the implicit terminal state."""


END = EndTarget()


@dataclass(frozen=True, slots=True)
class NamedTarget:
    name: str


@dataclass(frozen=True, slots=True)
class InlineTarget:
    """An anonymous state written in place; an empty body means `end`."""

    body: StateBody


@dataclass(frozen=True, slots=True)
class LabeledTarget:
    label: str
    target: OptionTarget


@dataclass(frozen=True, slots=True)
class ChoiceTarget:
    options: tuple[LabeledTarget, ...]


Target = Union[EndTarget, NamedTarget, InlineTarget, ChoiceTarget]
#: What a result label may lead to (choices do not nest).
OptionTarget = Union[EndTarget, NamedTarget, InlineTarget]


@dataclass(frozen=True, slots=True)
class Transition:
    sig: MethodSig
    target: Target


@dataclass(frozen=True, slots=True)
class StateBody:
    transitions: tuple[Transition, ...] = ()


@dataclass(frozen=True, slots=True)
class StateDef:
    name: str
    body: StateBody


@dataclass(frozen=True, slots=True)
class Typestate:
    """Root of a protocol AST; the first state, if any, is the initial one."""

    name: str
    states: tuple[StateDef, ...] = ()

    def state_names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.states)
