"""Serialized forms: automaton JSON, AST JSON, and DOT graph text.

Documents carry a schemaVersion so they can evolve; deserialization is
strict (unknown keys are rejected) and every shape violation is reported
with a JSON-pointer-style location. Name fields must be renderable
identifiers so that anything loaded here can be pretty-printed back to
parseable protocol text; the one exception is a state named ``end``, which
is accepted by the schema and rejected by semantic validation so it gets
the reserved-name diagnostic rather than a schema error.
"""

from __future__ import annotations

import json
from typing import Any

from .automaton import Doa, MethodEdge, ResultEdge, validate_doa, with_implicit_end
from .diagnostics import (
    Diagnostic,
    DiagnosticError,
    E_JSON_SCHEMA,
    E_JSON_SYNTAX,
    error,
    has_errors,
)
from .syntax.nodes import (
    END,
    ChoiceTarget,
    EndTarget,
    InlineTarget,
    LabeledTarget,
    MethodSig,
    NamedTarget,
    StateBody,
    StateDef,
    Transition,
    Typestate,
)
from .syntax.render import render
from .syntax.tokens import SourcePos, is_identifier, is_type_identifier
from .syntax.validate import validate_ast

SCHEMA_VERSION = "1"
KEYWORDS = ("typestate", "end")


# ── Automaton documents ─────────────────────────────────────────


def doa_to_json(doa: Doa) -> str:
    """Serialize an automaton; states are listed initial-first, then sorted."""
    methods = sorted(doa.methods, key=str)
    index = {sig: i for i, sig in enumerate(methods)}
    states = [doa.initial] + sorted(
        (s for s in doa.external_states + doa.internal_states if s != doa.initial))
    document = {
        "schemaVersion": SCHEMA_VERSION,
        "states": [
            {
                "name": name,
                "kind": "internal" if name in doa.internal_set else "external",
                "initial": name == doa.initial,
                "final": name in doa.final_set,
            }
            for name in states
        ],
        "methods": [
            {"returnType": sig.return_type, "name": sig.name, "params": list(sig.param_types)}
            for sig in methods
        ],
        "labels": sorted(doa.labels),
        "methodTransitions": [
            {"from": e.source, "method": index[e.sig], "to": e.target}
            for e in doa.method_transitions
        ],
        "resultTransitions": [
            {"from": e.source, "label": e.label, "to": e.target}
            for e in doa.result_transitions
        ],
    }
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def doa_from_json(text: str) -> Doa:
    """Parse and fully validate an automaton document.

    Raises DiagnosticError carrying schema diagnostics (E_JSON_SYNTAX,
    E_JSON_SCHEMA) or, once the shape is right, the automaton validator's
    errors. Warnings alone do not reject the document.
    """
    root = _load(text)
    diags: list[Diagnostic] = []
    _require_keys(root, "", ("schemaVersion", "states", "methods", "labels",
                             "methodTransitions", "resultTransitions"), diags)
    if _str_field(root, "", "schemaVersion", diags) not in (SCHEMA_VERSION, None):
        diags.append(error(E_JSON_SCHEMA,
                           f"unsupported schemaVersion (expected {SCHEMA_VERSION!r})",
                           "/schemaVersion"))

    external: list[str] = []
    internal: list[str] = []
    finals: list[str] = []
    initials: list[str] = []
    seen_states: set[str] = set()
    for i, item in enumerate(_list_field(root, "", "states", diags)):
        ptr = f"/states/{i}"
        if not isinstance(item, dict):
            diags.append(error(E_JSON_SCHEMA, "state must be an object", ptr))
            continue
        _require_keys(item, ptr, ("name", "kind", "initial", "final"), diags)
        name = _str_field(item, ptr, "name", diags)
        kind = _str_field(item, ptr, "kind", diags)
        is_initial = _bool_field(item, ptr, "initial", diags)
        is_final = _bool_field(item, ptr, "final", diags)
        if name is None:
            continue
        if not is_identifier(name) or name == "typestate":
            diags.append(error(E_JSON_SCHEMA,
                               f"state name {name!r} is not a usable identifier",
                               f"{ptr}/name"))
            continue
        if name in seen_states:
            diags.append(error(E_JSON_SCHEMA, f"state {name!r} declared twice",
                               f"{ptr}/name"))
            continue
        seen_states.add(name)
        if kind == "internal":
            internal.append(name)
            if is_final:
                diags.append(error(E_JSON_SCHEMA,
                                   "an internal-choice state cannot be final",
                                   f"{ptr}/final"))
            if is_initial:
                diags.append(error(E_JSON_SCHEMA,
                                   "an internal-choice state cannot be initial",
                                   f"{ptr}/initial"))
        elif kind == "external":
            external.append(name)
            if is_final:
                finals.append(name)
            if is_initial:
                initials.append(name)
        elif kind is not None:
            diags.append(error(E_JSON_SCHEMA,
                               "state kind must be \"external\" or \"internal\"",
                               f"{ptr}/kind"))

    if len(initials) != 1:
        diags.append(error(E_JSON_SCHEMA,
                           f"exactly one state must be initial (found {len(initials)})",
                           "/states"))

    methods: list[MethodSig] = []
    for i, item in enumerate(_list_field(root, "", "methods", diags)):
        ptr = f"/methods/{i}"
        if not isinstance(item, dict):
            diags.append(error(E_JSON_SCHEMA, "method must be an object", ptr))
            continue
        _require_keys(item, ptr, ("returnType", "name", "params"), diags)
        return_type = _str_field(item, ptr, "returnType", diags)
        name = _str_field(item, ptr, "name", diags)
        params = _list_field(item, ptr, "params", diags)
        ok = True
        if return_type is not None and not _usable_type(return_type):
            diags.append(error(E_JSON_SCHEMA,
                               f"returnType {return_type!r} is not a type name",
                               f"{ptr}/returnType"))
            ok = False
        if name is not None and not _usable_plain(name):
            diags.append(error(E_JSON_SCHEMA,
                               f"method name {name!r} is not a usable identifier",
                               f"{ptr}/name"))
            ok = False
        checked_params = []
        for j, param in enumerate(params):
            if not isinstance(param, str) or not _usable_type(param):
                diags.append(error(E_JSON_SCHEMA,
                                   f"parameter {param!r} is not a type name",
                                   f"{ptr}/params/{j}"))
                ok = False
            else:
                checked_params.append(param)
        if ok and return_type is not None and name is not None:
            sig = MethodSig(return_type, name, tuple(checked_params))
            if sig in methods:
                diags.append(error(E_JSON_SCHEMA, f"method {sig} declared twice", ptr))
            methods.append(sig)
        else:
            methods.append(MethodSig("void", f"__invalid{i}"))

    labels: list[str] = []
    for i, item in enumerate(_list_field(root, "", "labels", diags)):
        ptr = f"/labels/{i}"
        if not isinstance(item, str) or not _usable_plain(item):
            diags.append(error(E_JSON_SCHEMA,
                               f"label {item!r} is not a usable identifier", ptr))
        elif item in labels:
            diags.append(error(E_JSON_SCHEMA, f"label {item!r} declared twice", ptr))
        else:
            labels.append(item)

    method_edges: list[MethodEdge] = []
    for i, item in enumerate(_list_field(root, "", "methodTransitions", diags)):
        ptr = f"/methodTransitions/{i}"
        if not isinstance(item, dict):
            diags.append(error(E_JSON_SCHEMA, "transition must be an object", ptr))
            continue
        _require_keys(item, ptr, ("from", "method", "to"), diags)
        source = _str_field(item, ptr, "from", diags)
        target = _str_field(item, ptr, "to", diags)
        ref = item.get("method")
        if not isinstance(ref, int) or isinstance(ref, bool) or not 0 <= ref < len(methods):
            diags.append(error(E_JSON_SCHEMA,
                               f"method reference {ref!r} is out of range",
                               f"{ptr}/method"))
            continue
        if source is not None and target is not None:
            method_edges.append(MethodEdge(source, methods[ref], target))

    result_edges: list[ResultEdge] = []
    for i, item in enumerate(_list_field(root, "", "resultTransitions", diags)):
        ptr = f"/resultTransitions/{i}"
        if not isinstance(item, dict):
            diags.append(error(E_JSON_SCHEMA, "transition must be an object", ptr))
            continue
        _require_keys(item, ptr, ("from", "label", "to"), diags)
        source = _str_field(item, ptr, "from", diags)
        label = _str_field(item, ptr, "label", diags)
        target = _str_field(item, ptr, "to", diags)
        if source is not None and label is not None and target is not None:
            result_edges.append(ResultEdge(source, label, target))

    if has_errors(diags):
        raise DiagnosticError(diags)

    doa = Doa(
        external_states=tuple(external),
        internal_states=tuple(internal),
        methods=tuple(methods),
        labels=tuple(labels),
        initial=initials[0],
        finals=tuple(finals),
        method_transitions=tuple(method_edges),
        result_transitions=tuple(result_edges),
    )
    semantic = validate_doa(doa)
    if has_errors(semantic):
        raise DiagnosticError(semantic)
    return doa


# ── AST documents ───────────────────────────────────────────────


def ast_to_json(protocol: Typestate) -> str:
    document = {
        "name": protocol.name,
        "states": [
            {"name": s.name, "transitions": _transitions_doc(s.body)}
            for s in protocol.states
        ],
    }
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def _transitions_doc(body: StateBody) -> list[dict]:
    return [
        {
            "returnType": t.sig.return_type,
            "method": t.sig.name,
            "params": list(t.sig.param_types),
            "target": _target_doc(t.target),
        }
        for t in body.transitions
    ]


def _target_doc(target) -> dict:
    if isinstance(target, EndTarget):
        return {"kind": "end"}
    if isinstance(target, NamedTarget):
        return {"kind": "state", "name": target.name}
    if isinstance(target, InlineTarget):
        return {"kind": "inline", "body": _transitions_doc(target.body)}
    if isinstance(target, ChoiceTarget):
        return {"kind": "choice", "options": [
            {"label": o.label, "target": _target_doc(o.target)}
            for o in target.options
        ]}
    raise TypeError(f"unknown target {target!r}")


def ast_from_json(text: str) -> Typestate:
    """Parse and fully validate an AST document (schema, then semantics)."""
    root = _load(text)
    diags: list[Diagnostic] = []
    _require_keys(root, "", ("name", "states"), diags)
    name = _str_field(root, "", "name", diags)
    if name is not None and not _usable_plain(name):
        diags.append(error(E_JSON_SCHEMA,
                           f"protocol name {name!r} is not a usable identifier",
                           "/name"))
    states = []
    for i, item in enumerate(_list_field(root, "", "states", diags)):
        ptr = f"/states/{i}"
        if not isinstance(item, dict):
            diags.append(error(E_JSON_SCHEMA, "state must be an object", ptr))
            continue
        _require_keys(item, ptr, ("name", "transitions"), diags)
        state_name = _str_field(item, ptr, "name", diags)
        if state_name is None:
            continue
        if not is_identifier(state_name) or state_name == "typestate":
            diags.append(error(E_JSON_SCHEMA,
                               f"state name {state_name!r} is not a usable identifier",
                               f"{ptr}/name"))
            continue
        body = _body_from_doc(item.get("transitions"), f"{ptr}/transitions", diags)
        states.append(StateDef(state_name, body))

    if has_errors(diags):
        raise DiagnosticError(diags)
    protocol = Typestate(name, tuple(states))
    semantic = validate_ast(protocol)
    if has_errors(semantic):
        raise DiagnosticError(semantic)
    return protocol


MAX_DOC_NESTING = 64


def _body_from_doc(items: Any, ptr: str, diags: list[Diagnostic],
                   depth: int = 0) -> StateBody:
    if depth > MAX_DOC_NESTING:
        diags.append(error(E_JSON_SCHEMA,
                           f"states nested deeper than {MAX_DOC_NESTING} levels", ptr))
        return StateBody()
    if not isinstance(items, list):
        diags.append(error(E_JSON_SCHEMA, "transitions must be a list", ptr))
        return StateBody()
    transitions = []
    for i, item in enumerate(items):
        item_ptr = f"{ptr}/{i}"
        if not isinstance(item, dict):
            diags.append(error(E_JSON_SCHEMA, "transition must be an object", item_ptr))
            continue
        _require_keys(item, item_ptr, ("returnType", "method", "params", "target"), diags)
        return_type = _str_field(item, item_ptr, "returnType", diags)
        method = _str_field(item, item_ptr, "method", diags)
        params = _list_field(item, item_ptr, "params", diags)
        if return_type is not None and not _usable_type(return_type):
            diags.append(error(E_JSON_SCHEMA,
                               f"returnType {return_type!r} is not a type name",
                               f"{item_ptr}/returnType"))
            continue
        if method is not None and not _usable_plain(method):
            diags.append(error(E_JSON_SCHEMA,
                               f"method name {method!r} is not a usable identifier",
                               f"{item_ptr}/method"))
            continue
        param_types = []
        for j, param in enumerate(params):
            if not isinstance(param, str) or not _usable_type(param):
                diags.append(error(E_JSON_SCHEMA,
                                   f"parameter {param!r} is not a type name",
                                   f"{item_ptr}/params/{j}"))
            else:
                param_types.append(param)
        target = _target_from_doc(item.get("target"), f"{item_ptr}/target", diags,
                                  allow_choice=True, depth=depth)
        if return_type is None or method is None or target is None:
            continue
        transitions.append(Transition(MethodSig(return_type, method, tuple(param_types)),
                                      target))
    return StateBody(tuple(transitions))


def _target_from_doc(doc: Any, ptr: str, diags: list[Diagnostic], *,
                     allow_choice: bool, depth: int = 0):
    if not isinstance(doc, dict):
        diags.append(error(E_JSON_SCHEMA, "target must be an object", ptr))
        return None
    kind = doc.get("kind")
    if kind == "end":
        _require_keys(doc, ptr, ("kind",), diags)
        return END
    if kind == "state":
        _require_keys(doc, ptr, ("kind", "name"), diags)
        name = _str_field(doc, ptr, "name", diags)
        if name is None:
            return None
        if not is_identifier(name) or name == "typestate":
            diags.append(error(E_JSON_SCHEMA,
                               f"state name {name!r} is not a usable identifier",
                               f"{ptr}/name"))
            return None
        return NamedTarget(name)
    if kind == "inline":
        _require_keys(doc, ptr, ("kind", "body"), diags)
        return InlineTarget(_body_from_doc(doc.get("body"), f"{ptr}/body", diags,
                                           depth + 1))
    if kind == "choice" and allow_choice:
        _require_keys(doc, ptr, ("kind", "options"), diags)
        options = []
        raw = doc.get("options")
        if not isinstance(raw, list):
            diags.append(error(E_JSON_SCHEMA, "options must be a list", f"{ptr}/options"))
            raw = []
        for i, item in enumerate(raw):
            option_ptr = f"{ptr}/options/{i}"
            if not isinstance(item, dict):
                diags.append(error(E_JSON_SCHEMA, "option must be an object", option_ptr))
                continue
            _require_keys(item, option_ptr, ("label", "target"), diags)
            label = _str_field(item, option_ptr, "label", diags)
            if label is not None and not _usable_plain(label):
                diags.append(error(E_JSON_SCHEMA,
                                   f"label {label!r} is not a usable identifier",
                                   f"{option_ptr}/label"))
                continue
            target = _target_from_doc(item.get("target"), f"{option_ptr}/target",
                                      diags, allow_choice=False, depth=depth)
            if label is not None and target is not None:
                options.append(LabeledTarget(label, target))
        return ChoiceTarget(tuple(options))
    expected = "\"end\", \"state\", \"inline\", or \"choice\"" if allow_choice \
        else "\"end\", \"state\", or \"inline\""
    diags.append(error(E_JSON_SCHEMA, f"target kind must be {expected}", f"{ptr}/kind"))
    return None


def ast_to_text(protocol: Typestate) -> str:
    return render(protocol)


# ── DOT export ──────────────────────────────────────────────────


def doa_to_dot(doa: Doa) -> str:
    """Render the automaton as a DOT digraph.

    External states are circles (doublecircle when final), internal states
    diamonds; an invisible synthetic node points a gray arrow at the
    initial state; every transition becomes one labeled edge.
    """
    doa = with_implicit_end(doa)
    start = "__start"
    while start in doa.states:
        start = "_" + start
    names = [doa.initial] + sorted(s for s in doa.states if s != doa.initial)
    lines = ["digraph {", "    rankdir=LR;",
             f"    {_quote(start)} [shape=point, style=invis];"]
    for name in names:
        if name in doa.internal_set:
            shape = "diamond"
        elif name in doa.final_set:
            shape = "doublecircle"
        else:
            shape = "circle"
        lines.append(f"    {_quote(name)} [shape={shape}];")
    lines.append(f"    {_quote(start)} -> {_quote(doa.initial)} [color=gray];")
    for edge in doa.method_transitions:
        lines.append(f"    {_quote(edge.source)} -> {_quote(edge.target)}"
                     f" [label={_quote(str(edge.sig))}];")
    for edge in doa.result_transitions:
        lines.append(f"    {_quote(edge.source)} -> {_quote(edge.target)}"
                     f" [label={_quote(edge.label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


# ── Shared document helpers ─────────────────────────────────────


def _load(text: str) -> dict:
    try:
        root = json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[:exc.pos].encode("utf-8"))
        raise DiagnosticError([error(
            E_JSON_SYNTAX, f"invalid JSON: {exc.msg}",
            SourcePos(exc.lineno, exc.colno, offset))]) from exc
    except RecursionError:
        raise DiagnosticError([error(
            E_JSON_SYNTAX, "JSON nested too deeply", SourcePos(1, 1, 0))]) from None
    if not isinstance(root, dict):
        raise DiagnosticError([error(E_JSON_SCHEMA, "document must be an object", "")])
    return root


def _usable_plain(name: str) -> bool:
    return is_identifier(name) and name not in KEYWORDS


def _usable_type(name: str) -> bool:
    return is_type_identifier(name) and name not in KEYWORDS


def _require_keys(obj: dict, ptr: str, keys: tuple[str, ...],
                  diags: list[Diagnostic]) -> None:
    for key in keys:
        if key not in obj:
            diags.append(error(E_JSON_SCHEMA, f"missing key {key!r}", f"{ptr}/{key}"))
    for key in obj:
        if key not in keys:
            diags.append(error(E_JSON_SCHEMA, f"unknown key {key!r}", f"{ptr}/{key}"))


def _str_field(obj: dict, ptr: str, key: str, diags: list[Diagnostic]) -> str | None:
    value = obj.get(key)
    if isinstance(value, str):
        return value
    if key in obj:
        diags.append(error(E_JSON_SCHEMA, f"{key} must be a string", f"{ptr}/{key}"))
    return None


def _bool_field(obj: dict, ptr: str, key: str, diags: list[Diagnostic]) -> bool:
    value = obj.get(key)
    if isinstance(value, bool):
        return value
    if key in obj:
        diags.append(error(E_JSON_SCHEMA, f"{key} must be a boolean", f"{ptr}/{key}"))
    return False


def _list_field(obj: dict, ptr: str, key: str, diags: list[Diagnostic]) -> list:
    value = obj.get(key)
    if isinstance(value, list):
        return value
    if key in obj:
        diags.append(error(E_JSON_SCHEMA, f"{key} must be a list", f"{ptr}/{key}"))
    return []
