"""Canonical pretty-printer: the inverse of `parse`.

Formatting is fixed so output is byte-stable: one state per line, 4-space
indentation, ``, `` between transitions and options, ``: `` before targets.
"""

from __future__ import annotations

from .nodes import (
    ChoiceTarget,
    EndTarget,
    InlineTarget,
    NamedTarget,
    StateBody,
    Target,
    Typestate,
)


def render(protocol: Typestate) -> str:
    lines = [f"typestate {protocol.name} {{"]
    for state in protocol.states:
        lines.append(f"    {state.name} = {_body(state.body)}")
    lines.append("}")
    return "\n".join(lines)


def _body(body: StateBody) -> str:
    if not body.transitions:
        return "{}"
    inner = ", ".join(f"{t.sig}: {_target(t.target)}" for t in body.transitions)
    return f"{{ {inner} }}"


def _target(target: Target) -> str:
    if isinstance(target, EndTarget):
        return "end"
    if isinstance(target, NamedTarget):
        return target.name
    if isinstance(target, InlineTarget):
        return _body(target.body)
    if isinstance(target, ChoiceTarget):
        options = ", ".join(f"{o.label}: {_target(o.target)}" for o in target.options)
        return f"<{options}>"
    raise TypeError(f"unknown target {target!r}")
