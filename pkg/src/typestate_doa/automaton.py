"""Deterministic object automata.

A `Doa` has two kinds of states: external-choice states, where the client
picks a method to call, and internal-choice states, where a method's result
label picks the successor. Methods label edges out of external states;
result labels label edges out of internal states.

Transition collections are stored as insertion-ordered, duplicate-free
tuples (the order is what the decompiler and serializers emit), while
equality and hashing treat every collection as a set, so two automata that
differ only in bookkeeping order compare equal.

The ``end`` state is reserved: it is implicitly an external, final sink in
every automaton, and may be referenced without being declared (see
`with_implicit_end`).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, fields
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence, Union

from .diagnostics import (
    Diagnostic,
    DiagnosticError,
    E_CHOICE_NO_RESULTS,
    E_CHOICE_TO_CHOICE,
    E_FINAL_NOT_SINK,
    E_NONDETERMINISTIC,
    E_RESERVED_END,
    E_UNDEFINED_TARGET,
    E_UNION_CONFLICT,
    Severity,
    W_UNREACHABLE,
    error,
    warning,
)
from .syntax.nodes import MethodSig

END_STATE = "end"

#: One step of observable behavior: a method call or a result label.
Symbol = Union[MethodSig, str]
Word = Sequence[Symbol]


class MethodEdge(NamedTuple):
    source: str
    sig: MethodSig
    target: str


class ResultEdge(NamedTuple):
    source: str
    label: str
    target: str


@dataclass(frozen=True)
class Reached:
    state: str


@dataclass(frozen=True)
class Stuck:
    after: int  # symbols consumed before the failing one
    at: str


RunOutcome = Union[Reached, Stuck]


def _ordered_unique(items: Iterable) -> tuple:
    # Sets carry no meaningful order; sort them so construction is deterministic.
    if isinstance(items, (set, frozenset)):
        items = sorted(items, key=_sort_key)
    return tuple(dict.fromkeys(items))


def _sort_key(item) -> str:
    if isinstance(item, tuple):
        return "\x00".join(_sort_key(part) for part in item)
    return str(item)


@dataclass(frozen=True, eq=False)
class Doa:
    """The automaton octuple; see the module docstring for conventions.

    Construction only normalizes the collections (ordered, duplicate-free);
    it does not reject bad content, so raw deserialized input can be held
    and inspected. `validate_doa` is the enforcement point, and `union`
    refuses merges that would break determinism.
    """

    external_states: tuple[str, ...] = ()
    internal_states: tuple[str, ...] = ()
    methods: tuple[MethodSig, ...] = ()
    labels: tuple[str, ...] = ()
    initial: str = END_STATE
    finals: tuple[str, ...] = ()
    method_transitions: tuple[MethodEdge, ...] = ()
    result_transitions: tuple[ResultEdge, ...] = ()

    def __post_init__(self):
        for f in fields(self):
            if f.name == "initial":
                continue
            object.__setattr__(self, f.name, _ordered_unique(getattr(self, f.name)))
        object.__setattr__(
            self, "method_transitions",
            tuple(MethodEdge(*e) for e in self.method_transitions))
        object.__setattr__(
            self, "result_transitions",
            tuple(ResultEdge(*e) for e in self.result_transitions))

    # Equality is set-based: storage order is presentation, not identity.
    def __eq__(self, other) -> bool:
        if not isinstance(other, Doa):
            return NotImplemented
        return self._as_sets() == other._as_sets()

    def __hash__(self) -> int:
        return hash(self._as_sets())

    def _as_sets(self):
        return (
            frozenset(self.external_states),
            frozenset(self.internal_states),
            frozenset(self.methods),
            frozenset(self.labels),
            self.initial,
            frozenset(self.finals),
            frozenset(self.method_transitions),
            frozenset(self.result_transitions),
        )

    # ── Derived views ───────────────────────────────────────────

    @cached_property
    def external_set(self) -> frozenset[str]:
        return frozenset(self.external_states)

    @cached_property
    def internal_set(self) -> frozenset[str]:
        return frozenset(self.internal_states)

    @cached_property
    def final_set(self) -> frozenset[str]:
        return frozenset(self.finals)

    @cached_property
    def states(self) -> frozenset[str]:
        return self.external_set | self.internal_set

    @cached_property
    def delta(self) -> dict[tuple[str, MethodSig], str]:
        return {(e.source, e.sig): e.target for e in self.method_transitions}

    @cached_property
    def tau(self) -> dict[tuple[str, str], str]:
        return {(e.source, e.label): e.target for e in self.result_transitions}

    def is_final_sink(self, state: str) -> bool:
        """Final with no outgoing method edges: behaves exactly like ``end``."""
        if state not in self.final_set:
            return False
        return all(e.source != state for e in self.method_transitions)

    # ── Execution ───────────────────────────────────────────────

    def step(self, source: str, symbol: Symbol) -> str | None:
        """The successor of `source` under `symbol`, or None when absent.

        Method symbols move external states, labels move internal states;
        a kind mismatch is simply an absent transition. Raises ValueError
        for a state the automaton does not know.
        """
        if source not in self.states and source != END_STATE:
            raise ValueError(f"unknown state {source!r}")
        if isinstance(symbol, MethodSig):
            return self.delta.get((source, symbol))
        return self.tau.get((source, symbol))

    def run(self, source: str, word: Word) -> RunOutcome:
        """Drive the automaton from `source` through `word`.

        Returns Reached(final position) when the whole word is consumed,
        otherwise Stuck at the first symbol with no transition.
        """
        state = source
        for consumed, symbol in enumerate(word):
            successor = self.step(state, symbol)
            if successor is None:
                return Stuck(after=consumed, at=state)
            state = successor
        return Reached(state)

    def reachable(self) -> frozenset[str]:
        """States reachable from the initial state along any edges."""
        seen = {self.initial}
        frontier = [self.initial]
        while frontier:
            state = frontier.pop()
            for edge in self.method_transitions:
                if edge.source == state and edge.target not in seen:
                    seen.add(edge.target)
                    frontier.append(edge.target)
            for edge in self.result_transitions:
                if edge.source == state and edge.target not in seen:
                    seen.add(edge.target)
                    frontier.append(edge.target)
        return frozenset(seen)


def with_implicit_end(doa: Doa) -> Doa:
    """Materialize the reserved ``end`` state when the automaton touches it.

    ``end`` is by definition an external final sink, so any mention (as a
    transition target, a final, or the initial state) makes it a member of
    the state set, final included, even if the input never declared it.
    """
    mentioned = (
        END_STATE == doa.initial
        or END_STATE in doa.external_set
        or END_STATE in doa.final_set
        or any(e.target == END_STATE for e in doa.method_transitions)
        or any(e.target == END_STATE for e in doa.result_transitions)
    )
    if not mentioned or END_STATE in doa.internal_set:
        return doa
    if END_STATE in doa.external_set and END_STATE in doa.final_set:
        return doa
    return Doa(
        external_states=doa.external_states + (END_STATE,),
        internal_states=doa.internal_states,
        methods=doa.methods,
        labels=doa.labels,
        initial=doa.initial,
        finals=doa.finals + (END_STATE,),
        method_transitions=doa.method_transitions,
        result_transitions=doa.result_transitions,
    )


class UnionConflictError(DiagnosticError):
    pass


def union(a: Doa, b: Doa) -> Doa:
    """Componentwise union of two automata; the initial state is `a`'s.

    States with equal names are identified. Raises UnionConflictError
    (E_UNION_CONFLICT) when the merge makes a transition relation
    nondeterministic or puts one name in both state kinds.
    """
    merged = Doa(
        external_states=a.external_states + b.external_states,
        internal_states=a.internal_states + b.internal_states,
        methods=a.methods + b.methods,
        labels=a.labels + b.labels,
        initial=a.initial,
        finals=a.finals + b.finals,
        method_transitions=a.method_transitions + b.method_transitions,
        result_transitions=a.result_transitions + b.result_transitions,
    )
    conflicts = _merge_conflicts(merged)
    if conflicts:
        raise UnionConflictError(conflicts)
    return merged


def _merge_conflicts(doa: Doa) -> list[Diagnostic]:
    diags = []
    for name in doa.external_set & doa.internal_set:
        diags.append(error(E_UNION_CONFLICT,
                           f"state {name!r} is both external and internal"))
    for (source, sig), n in Counter((e.source, e.sig) for e in doa.method_transitions).items():
        if n > 1:
            diags.append(error(E_UNION_CONFLICT,
                               f"conflicting transitions from {source!r} on {sig}"))
    for (source, label), n in Counter((e.source, e.label) for e in doa.result_transitions).items():
        if n > 1:
            diags.append(error(E_UNION_CONFLICT,
                               f"conflicting result transitions from {source!r} on {label!r}"))
    return diags


def validate_doa(doa: Doa, *, finals_must_be_sinks: bool = False) -> list[Diagnostic]:
    """Check automaton well-formedness; accepts raw deserialized input.

    Detects undefined or wrong-kind endpoints, choices without results,
    result transitions into internal states, nondeterminism, misuse of the
    reserved ``end`` name, finals with outgoing calls, and unreachable
    states (warning). `finals_must_be_sinks` raises E_FINAL_NOT_SINK to
    error severity; the typestate grammar can only express final sinks, so
    the decompiler turns it on.
    """
    diags: list[Diagnostic] = []

    if END_STATE in doa.internal_set:
        diags.append(error(E_RESERVED_END,
                           "'end' cannot be an internal-choice state", END_STATE))
    elif END_STATE in doa.external_set:
        has_out = any(e.source == END_STATE for e in doa.method_transitions)
        if has_out:
            diags.append(error(E_RESERVED_END,
                               "'end' is reserved for the terminal state and cannot"
                               " have outgoing transitions", END_STATE))

    view = with_implicit_end(doa)
    known = view.states

    if view.initial not in known:
        diags.append(error(E_UNDEFINED_TARGET,
                           f"initial state {view.initial!r} is not defined",
                           view.initial))
    elif view.initial in view.internal_set:
        diags.append(error(E_UNDEFINED_TARGET,
                           f"initial state {view.initial!r} must be an"
                           " external-choice state", view.initial))

    method_set = frozenset(view.methods)
    label_set = frozenset(view.labels)

    for edge in view.method_transitions:
        where = f"{edge.source} --{edge.sig}--> {edge.target}"
        if edge.source not in known:
            diags.append(error(E_UNDEFINED_TARGET,
                               f"transition from undefined state {edge.source!r}", where))
        elif edge.source in view.internal_set:
            diags.append(error(E_UNDEFINED_TARGET,
                               f"method transition from internal-choice state"
                               f" {edge.source!r}", where))
        if edge.sig not in method_set:
            diags.append(error(E_UNDEFINED_TARGET,
                               f"method {edge.sig} is not in the method set", where))
        if edge.target not in known:
            diags.append(error(E_UNDEFINED_TARGET,
                               f"transition to undefined state {edge.target!r}", where))

    for edge in view.result_transitions:
        where = f"{edge.source} --{edge.label}--> {edge.target}"
        if edge.source not in known:
            diags.append(error(E_UNDEFINED_TARGET,
                               f"result transition from undefined state"
                               f" {edge.source!r}", where))
        elif edge.source in view.external_set:
            diags.append(error(E_UNDEFINED_TARGET,
                               f"result transition from external-choice state"
                               f" {edge.source!r}", where))
        if edge.label not in label_set:
            diags.append(error(E_UNDEFINED_TARGET,
                               f"label {edge.label!r} is not in the label set", where))
        if edge.target in view.internal_set:
            diags.append(error(E_CHOICE_TO_CHOICE,
                               f"result transition into internal-choice state"
                               f" {edge.target!r}", where))
        elif edge.target not in known:
            diags.append(error(E_UNDEFINED_TARGET,
                               f"result transition to undefined state"
                               f" {edge.target!r}", where))

    for (source, sig), n in Counter((e.source, e.sig) for e in view.method_transitions).items():
        if n > 1:
            diags.append(error(E_NONDETERMINISTIC,
                               f"multiple transitions from {source!r} on {sig}", source))
    for (source, label), n in Counter((e.source, e.label) for e in view.result_transitions).items():
        if n > 1:
            diags.append(error(E_NONDETERMINISTIC,
                               f"multiple result transitions from {source!r}"
                               f" on {label!r}", source))

    for name in view.finals:
        if name not in known:
            diags.append(error(E_UNDEFINED_TARGET,
                               f"final state {name!r} is not defined", name))
        elif name in view.internal_set:
            diags.append(error(E_UNDEFINED_TARGET,
                               f"final state {name!r} must be an external-choice"
                               " state", name))

    for name in view.internal_states:
        if not any(e.source == name for e in view.result_transitions):
            diags.append(error(E_CHOICE_NO_RESULTS,
                               f"internal-choice state {name!r} has no result"
                               " transitions", name))

    severity = Severity.ERROR if finals_must_be_sinks else Severity.WARNING
    for name in view.finals:
        if name in view.external_set and not view.is_final_sink(name):
            diags.append(Diagnostic(severity, E_FINAL_NOT_SINK,
                                    f"final state {name!r} has outgoing transitions",
                                    name))

    if view.initial in known and view.initial not in view.internal_set:
        reachable = view.reachable()
        for name in view.external_states + view.internal_states:
            if name not in reachable:
                diags.append(warning(W_UNREACHABLE,
                                     f"state {name!r} is unreachable from"
                                     f" {view.initial!r}", name))

    return diags
