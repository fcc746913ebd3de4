"""Semantic validation of protocol ASTs.

Structural well-formedness is the parser's job; this pass catches what the
grammar cannot: the reserved ``end`` name, dangling state references,
duplicate states/transitions/labels, and empty choices.
"""

from __future__ import annotations

from ..diagnostics import (
    Diagnostic,
    E_DUP_LABEL,
    E_DUP_STATE,
    E_DUP_TRANSITION,
    E_EMPTY_CHOICE,
    E_RESERVED_END,
    E_UNDEFINED_STATE,
    error,
)
from .nodes import ChoiceTarget, InlineTarget, NamedTarget, StateBody, Typestate

RESERVED_STATE = "end"


def validate_ast(protocol: Typestate) -> list[Diagnostic]:
    """Return every semantic violation; an empty list means the protocol is valid."""
    diags: list[Diagnostic] = []
    defined = set(protocol.state_names())

    seen: set[str] = set()
    for state in protocol.states:
        if state.name == RESERVED_STATE:
            diags.append(error(E_RESERVED_END,
                               "state name 'end' is reserved for the terminal state",
                               f"state {state.name}"))
        if state.name in seen:
            diags.append(error(E_DUP_STATE, f"duplicate state {state.name!r}",
                               f"state {state.name}"))
        seen.add(state.name)
        _check_body(state.body, defined, f"state {state.name}", diags)
    return diags


def _check_body(body: StateBody, defined: set[str], where: str,
                diags: list[Diagnostic]) -> None:
    seen_calls = set()
    for transition in body.transitions:
        key = transition.sig.call_key
        if key in seen_calls:
            diags.append(error(
                E_DUP_TRANSITION,
                f"duplicate transition for {transition.sig.name}"
                f"({', '.join(transition.sig.param_types)}) in {where}",
                where))
        seen_calls.add(key)
        _check_target(transition.target, defined, f"{where}: {transition.sig}", diags)


def _check_target(target, defined: set[str], where: str,
                  diags: list[Diagnostic]) -> None:
    if isinstance(target, NamedTarget):
        if target.name not in defined:
            diags.append(error(E_UNDEFINED_STATE,
                               f"reference to undefined state {target.name!r}", where))
    elif isinstance(target, InlineTarget):
        _check_body(target.body, defined, where, diags)
    elif isinstance(target, ChoiceTarget):
        if not target.options:
            diags.append(error(E_EMPTY_CHOICE, "internal choice has no options", where))
        seen_labels: set[str] = set()
        for option in target.options:
            if option.label in seen_labels:
                diags.append(error(E_DUP_LABEL,
                                   f"duplicate label {option.label!r} in choice", where))
            seen_labels.add(option.label)
            _check_target(option.target, defined, f"{where}: {option.label}", diags)
