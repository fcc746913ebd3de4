"""Translate a validated automaton back into a protocol AST.

Every final sink state plays the role of ``end``: transitions into one are
rendered as the literal ``end`` and the sink itself is never emitted, which
preserves behavior even when several distinct sinks exist. Internal-choice
states are inlined as ``<label: target, …>`` at each transition that enters
them (the grammar has no way to name a choice), duplicating shared ones.

The grammar cannot express a final state with outgoing calls, nor a first
state named ``end``, so those automata are rejected here even though they
are fine automata otherwise.
"""

from __future__ import annotations

from .automaton import Doa, validate_doa, with_implicit_end
from .diagnostics import (
    DiagnosticError,
    E_INITIAL_IS_END,
    error,
    has_errors,
)
from .syntax.nodes import (
    END,
    ChoiceTarget,
    LabeledTarget,
    NamedTarget,
    StateBody,
    StateDef,
    Target,
    Transition,
    Typestate,
)
from .syntax.tokens import is_identifier


def decompile(name: str, doa: Doa) -> Typestate:
    """Build the protocol AST that describes `doa`, named `name`.

    Raises DiagnosticError when the automaton cannot be expressed as a
    protocol (validation errors, a non-sink final, or an initial state that
    is itself a terminal while other states need emitting), and ValueError
    for a malformed protocol name.
    """
    if not is_identifier(name) or name in ("typestate", "end"):
        raise ValueError(f"{name!r} is not usable as a protocol name")
    doa = with_implicit_end(doa)
    diags = validate_doa(doa, finals_must_be_sinks=True)
    if has_errors(diags):
        raise DiagnosticError(diags)

    order = emit_state_order(doa)
    if doa.is_final_sink(doa.initial) and order:
        raise DiagnosticError([error(
            E_INITIAL_IS_END,
            f"initial state {doa.initial!r} is terminal, but the protocol"
            " grammar cannot name its first state 'end'",
            doa.initial)])

    states = tuple(StateDef(s, _state_body(doa, s)) for s in order)
    return Typestate(name, states)


def emit_state_order(doa: Doa) -> list[str]:
    """The order in which external states get top-level definitions.

    The initial state comes first, then states in breadth-first discovery
    order (sibling edges ordered by their symbol's text), then unreachable,
    non-final external states alphabetically. Final sinks are rendered as
    ``end`` at their use sites and are never listed.
    """
    doa = with_implicit_end(doa)
    order: list[str] = []
    seen = {doa.initial}
    queue = [doa.initial]
    while queue:
        state = queue.pop(0)
        if state in doa.external_set and not doa.is_final_sink(state):
            order.append(state)
        for target in _successors_in_symbol_order(doa, state):
            if target not in seen:
                seen.add(target)
                queue.append(target)
    stragglers = [s for s in doa.external_states
                  if s not in seen and s not in doa.final_set]
    order.extend(sorted(stragglers))
    return order


def _successors_in_symbol_order(doa: Doa, state: str) -> list[str]:
    if state in doa.internal_set:
        edges = [(e.label, e.target) for e in doa.result_transitions
                 if e.source == state]
    else:
        edges = [(str(e.sig), e.target) for e in doa.method_transitions
                 if e.source == state]
    return [target for _, target in sorted(edges)]


def _state_body(doa: Doa, state: str) -> StateBody:
    transitions = tuple(
        Transition(edge.sig, _target(doa, edge.target))
        for edge in doa.method_transitions if edge.source == state)
    return StateBody(transitions)


def _target(doa: Doa, target: str) -> Target:
    if doa.is_final_sink(target):
        return END
    if target in doa.internal_set:
        options = tuple(
            LabeledTarget(edge.label,
                          END if doa.is_final_sink(edge.target)
                          else NamedTarget(edge.target))
            for edge in doa.result_transitions if edge.source == target)
        return ChoiceTarget(options)
    return NamedTarget(target)
