"""Translate a validated protocol AST into an automaton.

The translation recurses over the AST, producing a small automaton fragment
per construct and merging fragments with the componentwise union:

  * an empty protocol is the end-only automaton;
  * a protocol body is the union of its states' fragments with a trailing
    end-only fragment, so ``end`` is always present (even when unreachable);
  * an empty state body makes that state final;
  * a transition to ``end`` or to ``{}`` adds an edge into ``end``;
  * a transition to a named state adds an edge to it;
  * an inline state gets a fresh name and is compiled in place;
  * a choice target gets a fresh internal state, an edge into it, and one
    result edge per option.

Fresh names are ``_S1, _S2, …`` for inlined states and ``_C1, _C2, …`` for
choice states, skipping names the protocol already claims, so compilation
is deterministic end to end.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .automaton import Doa, END_STATE, MethodEdge, ResultEdge, union
from .diagnostics import has_errors
from .syntax.nodes import (
    ChoiceTarget,
    EndTarget,
    InlineTarget,
    MethodSig,
    NamedTarget,
    StateBody,
    Typestate,
)
from .syntax.validate import validate_ast


class FreshKind(enum.Enum):
    INNER = "_S"
    CHOICE = "_C"


@dataclass
class NameRegistry:
    """The names already claimed in one translation; hands out fresh ones."""

    claimed: set[str] = field(default_factory=set)
    generated: int = 0

    def fresh(self, kind: FreshKind) -> str:
        k = 1
        while f"{kind.value}{k}" in self.claimed:
            k += 1
        name = f"{kind.value}{k}"
        self.claimed.add(name)
        self.generated += 1
        return name


def end_only() -> Doa:
    """The automaton of an empty protocol: ``end`` alone, initial and final."""
    return Doa(external_states=(END_STATE,), initial=END_STATE, finals=(END_STATE,))


# Option fragments have no initial state of their own: unions always take
# the left side's initial, so the placeholder survives until the fragment
# lands on the right of the union that introduces the choice edge.
_NO_INITIAL = ""


def _union(a: Doa, b: Doa) -> Doa:
    return union(a, b)


def compile_ast(protocol: Typestate) -> Doa:
    """Compile a semantically valid protocol into its automaton.

    Raises ValueError when the AST fails validation; the result always
    passes automaton validation (``end`` may be unreachable, which is only
    a warning).
    """
    diags = validate_ast(protocol)
    if has_errors(diags):
        raise ValueError("protocol is not valid: "
                         + "; ".join(str(d) for d in diags if d.is_error))
    registry = NameRegistry(set(protocol.state_names()) | {END_STATE})
    # Left-to-right folding keeps fresh names in source order; the union is
    # associative on the nose, so the grouping does not matter.
    result = None
    for state in protocol.states:
        fragment = _compile_state(state.name, state.body, registry)
        result = fragment if result is None else _union(result, fragment)
    return end_only() if result is None else _union(result, end_only())


def _compile_state(start: str, body: StateBody, registry: NameRegistry) -> Doa:
    if not body.transitions:
        return Doa(external_states=(start,), initial=start, finals=(start,))
    result = None
    for transition in body.transitions:
        fragment = _compile_transition(start, transition.sig, transition.target, registry)
        result = fragment if result is None else _union(result, fragment)
    return result


def _compile_transition(start: str, sig: MethodSig, target, registry: NameRegistry) -> Doa:
    if isinstance(target, EndTarget) or (
            isinstance(target, InlineTarget) and not target.body.transitions):
        return Doa(external_states=(start, END_STATE), methods=(sig,),
                   initial=start, finals=(END_STATE,),
                   method_transitions=(MethodEdge(start, sig, END_STATE),))
    if isinstance(target, NamedTarget):
        return Doa(external_states=(start, target.name), methods=(sig,),
                   initial=start,
                   method_transitions=(MethodEdge(start, sig, target.name),))
    if isinstance(target, InlineTarget):
        inner = registry.fresh(FreshKind.INNER)
        return _union(
            _compile_transition(start, sig, NamedTarget(inner), registry),
            _compile_state(inner, target.body, registry))
    if isinstance(target, ChoiceTarget):
        choice = registry.fresh(FreshKind.CHOICE)
        entry = Doa(external_states=(start,), internal_states=(choice,),
                    methods=(sig,), initial=start,
                    method_transitions=(MethodEdge(start, sig, choice),))
        return _union(entry, _compile_options(choice, target.options, registry))
    raise TypeError(f"unknown target {target!r}")


def _compile_options(choice: str, options, registry: NameRegistry) -> Doa:
    result = None
    for option in options:
        fragment = _compile_option(choice, option.label, option.target, registry)
        result = fragment if result is None else _union(result, fragment)
    return result


def _compile_option(choice: str, label: str, target, registry: NameRegistry) -> Doa:
    if isinstance(target, EndTarget) or (
            isinstance(target, InlineTarget) and not target.body.transitions):
        return Doa(external_states=(END_STATE,), internal_states=(choice,),
                   labels=(label,), initial=_NO_INITIAL, finals=(END_STATE,),
                   result_transitions=(ResultEdge(choice, label, END_STATE),))
    if isinstance(target, NamedTarget):
        return Doa(external_states=(target.name,), internal_states=(choice,),
                   labels=(label,), initial=_NO_INITIAL,
                   result_transitions=(ResultEdge(choice, label, target.name),))
    if isinstance(target, InlineTarget):
        inner = registry.fresh(FreshKind.INNER)
        return _union(
            _compile_option(choice, label, NamedTarget(inner), registry),
            _compile_state(inner, target.body, registry))
    raise TypeError(f"unknown option target {target!r}")
