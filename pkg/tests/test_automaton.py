import random

import pytest
from hypothesis import given, strategies as st

from typestate_doa import (
    Doa,
    MethodSig,
    Reached,
    Stuck,
    UnionConflictError,
    compile_ast,
    parse,
    union,
    validate_doa,
    with_implicit_end,
)
from typestate_doa.automaton import MethodEdge, ResultEdge
from typestate_doa.diagnostics import (
    E_CHOICE_NO_RESULTS,
    E_CHOICE_TO_CHOICE,
    E_FINAL_NOT_SINK,
    E_NONDETERMINISTIC,
    E_RESERVED_END,
    E_UNDEFINED_TARGET,
    Severity,
    W_UNREACHABLE,
)

from generators import random_doa

TAKE_OFF = MethodSig("void", "takeOff", ())
LAND = MethodSig("void", "land", ())
MOVE_TO = MethodSig("void", "moveTo", ("double", "double"))
HAS_ARRIVED = MethodSig("Boolean", "hasArrived", ())
TERMINATE = MethodSig("void", "terminate", ())


def end_only():
    return Doa(external_states=("end",), initial="end", finals=("end",))


def codes(diags):
    return [d.code for d in diags]


# ── step ────────────────────────────────────────────────────────


def test_step_follows_method_edges(drone_v2):
    assert drone_v2.step("Idle", TAKE_OFF) == "Hovering"


def test_step_absent_when_method_not_offered(drone_v2):
    assert drone_v2.step("Idle", LAND) is None


def test_step_from_choice_state_on_label(drone_v2):
    assert drone_v2.step("_C1", "True") == "Hovering"
    assert drone_v2.step("_C1", "False") == "Flying"


def test_step_kind_mismatch_is_absent(drone_v2):
    assert drone_v2.step("Idle", "True") is None
    assert drone_v2.step("_C1", TAKE_OFF) is None


def test_step_unknown_state_is_an_error(drone_v2):
    with pytest.raises(ValueError):
        drone_v2.step("Orbit", TAKE_OFF)


# ── run ─────────────────────────────────────────────────────────


def test_run_empty_word_stays_put(drone_v2):
    assert drone_v2.run("Idle", []) == Reached("Idle")


def test_run_through_choice(drone_v2):
    word = [TAKE_OFF, MOVE_TO, HAS_ARRIVED, "True"]
    assert drone_v2.run("Idle", word) == Reached("Hovering")


def test_run_sticks_at_first_failure(drone_v2):
    assert drone_v2.run("Idle", [TAKE_OFF, LAND, MOVE_TO]) == Stuck(after=2, at="Idle")


@given(st.integers(min_value=0, max_value=2**32 - 1), st.data())
def test_run_composes_over_splits(seed, data):
    doa = with_implicit_end(random_doa(random.Random(seed)))
    rng = random.Random(seed ^ 0xABCDEF)
    # walk a random trace, then check run(u + v) == run from run(u) through v
    word = []
    state = doa.initial
    for _ in range(6):
        options = ([(e.sig, e.target) for e in doa.method_transitions if e.source == state]
                   + [(e.label, e.target) for e in doa.result_transitions if e.source == state])
        if not options:
            break
        symbol, state = rng.choice(options)
        word.append(symbol)
    cut = data.draw(st.integers(min_value=0, max_value=len(word)))
    first = doa.run(doa.initial, word[:cut])
    assert isinstance(first, Reached)
    assert doa.run(first.state, word[cut:]) == doa.run(doa.initial, word)


# ── union ───────────────────────────────────────────────────────


def test_union_with_end_only_changes_nothing(basic):
    assert union(basic, end_only()) == basic
    assert union(basic, end_only()).initial == "begin"


def test_union_is_idempotent(basic, drone_v2):
    assert union(basic, basic) == basic
    assert union(drone_v2, drone_v2) == drone_v2


def test_union_merges_sibling_transitions():
    a = Doa(external_states=("begin", "x"), methods=(TAKE_OFF,), initial="begin",
            method_transitions=(MethodEdge("begin", TAKE_OFF, "x"),))
    b = Doa(external_states=("begin", "y"), methods=(LAND,), initial="begin",
            method_transitions=(MethodEdge("begin", LAND, "y"),))
    merged = union(a, b)
    assert set(merged.external_states) == {"begin", "x", "y"}
    assert len(merged.method_transitions) == 2
    assert merged.initial == "begin"


def test_union_takes_left_initial(basic):
    flipped = union(end_only(), basic)
    assert flipped.initial == "end"


def test_union_rejects_conflicting_edges():
    a = Doa(external_states=("s", "x"), methods=(TAKE_OFF,), initial="s",
            method_transitions=(MethodEdge("s", TAKE_OFF, "x"),))
    b = Doa(external_states=("s", "y"), methods=(TAKE_OFF,), initial="s",
            method_transitions=(MethodEdge("s", TAKE_OFF, "y"),))
    with pytest.raises(UnionConflictError):
        union(a, b)


def test_union_rejects_state_kind_clash():
    a = Doa(external_states=("s", "c"), initial="s")
    b = Doa(external_states=("s",), internal_states=("c",), initial="s",
            labels=("Ok",), result_transitions=(ResultEdge("c", "Ok", "s"),))
    with pytest.raises(UnionConflictError):
        union(a, b)


@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_union_laws_on_random_automata(seed):
    rng = random.Random(seed)
    doa = random_doa(rng)
    assert union(doa, doa) == doa
    assert union(doa, end_only()).initial == doa.initial


def test_union_associativity(basic):
    a, b, c = (basic, end_only(),
               Doa(external_states=("z",), initial="z", finals=("z",)))
    assert union(union(a, b), c) == union(a, union(b, c))


# ── equality semantics ──────────────────────────────────────────


def test_equality_ignores_storage_order(basic):
    reordered = Doa(
        external_states=tuple(reversed(basic.external_states)),
        internal_states=basic.internal_states,
        methods=basic.methods,
        labels=basic.labels,
        initial=basic.initial,
        finals=basic.finals,
        method_transitions=basic.method_transitions,
        result_transitions=basic.result_transitions,
    )
    assert reordered == basic
    assert hash(reordered) == hash(basic)


def test_duplicate_entries_collapse():
    doa = Doa(external_states=("a", "a", "end"), initial="a", finals=("end", "end"))
    assert doa.external_states == ("a", "end")
    assert doa.finals == ("end",)


# ── validate_doa ────────────────────────────────────────────────


def test_drone_validates_with_only_unreachable_end(drone_v2):
    diags = validate_doa(drone_v2)
    assert codes(diags) == [W_UNREACHABLE]
    assert "'end'" in diags[0].message
    assert diags[0].severity is Severity.WARNING


def test_choice_without_results():
    doa = Doa(external_states=("a",), internal_states=("c",), methods=(TAKE_OFF,),
              initial="a", method_transitions=(MethodEdge("a", TAKE_OFF, "c"),))
    assert codes(validate_doa(doa)) == [E_CHOICE_NO_RESULTS]


def test_result_transition_into_choice_state():
    doa = Doa(external_states=("a",), internal_states=("c", "d"),
              methods=(TAKE_OFF,), labels=("Ok", "No"), initial="a",
              method_transitions=(MethodEdge("a", TAKE_OFF, "c"),),
              result_transitions=(ResultEdge("c", "Ok", "a"),
                                  ResultEdge("c", "No", "d"),
                                  ResultEdge("d", "Ok", "a")))
    assert codes(validate_doa(doa)) == [E_CHOICE_TO_CHOICE]


def test_undefined_transition_target():
    doa = Doa(external_states=("a",), methods=(TAKE_OFF,), initial="a",
              method_transitions=(MethodEdge("a", TAKE_OFF, "ghost"),))
    assert codes(validate_doa(doa)) == [E_UNDEFINED_TARGET]


def test_nondeterministic_transitions():
    doa = Doa(external_states=("a", "b", "c"), methods=(TAKE_OFF,), initial="a",
              method_transitions=(MethodEdge("a", TAKE_OFF, "b"),
                                  MethodEdge("a", TAKE_OFF, "c")),
              finals=("b", "c"))
    found = codes(validate_doa(doa))
    assert E_NONDETERMINISTIC in found


def test_final_with_outgoing_is_warning_by_default():
    doa = Doa(external_states=("a", "b"), methods=(TAKE_OFF,), initial="a",
              finals=("a",), method_transitions=(MethodEdge("a", TAKE_OFF, "b"),))
    diags = validate_doa(doa)
    assert codes(diags) == [E_FINAL_NOT_SINK]
    assert diags[0].severity is Severity.WARNING
    strict = validate_doa(doa, finals_must_be_sinks=True)
    assert strict[0].severity is Severity.ERROR


def test_reserved_end_with_outgoing_edges():
    doa = Doa(external_states=("a", "end"), methods=(TAKE_OFF,), initial="a",
              finals=("end",),
              method_transitions=(MethodEdge("a", TAKE_OFF, "end"),
                                  MethodEdge("end", TAKE_OFF, "a")))
    assert E_RESERVED_END in codes(validate_doa(doa))


def test_implicit_end_needs_no_declaration():
    # referenced but undeclared `end` is materialized, not reported
    doa = Doa(external_states=("begin",), methods=(TERMINATE,), initial="begin",
              finals=("end",),
              method_transitions=(MethodEdge("begin", TERMINATE, "end"),))
    assert validate_doa(doa) == []
    normalized = with_implicit_end(doa)
    assert "end" in normalized.external_set
    assert "end" in normalized.final_set


# ── reachable ───────────────────────────────────────────────────


def test_end_only_reachability():
    assert end_only().reachable() == {"end"}


def test_drone_reachability_excludes_end(drone_v2):
    assert drone_v2.reachable() == {"Idle", "Hovering", "Flying", "_C1"}


def test_shutdown_drone_reaches_end():
    from conftest import fixture_text
    doa = compile_ast(parse(fixture_text("drone_shutdown.protocol")))
    assert "end" in doa.reachable()
    assert validate_doa(doa) == []


def test_undeclared_label_on_result_transition():
    ask = MethodSig("Boolean", "ask", ())
    doa = Doa(external_states=("a",), internal_states=("c",), methods=(ask,),
              labels=(), initial="a",
              method_transitions=(MethodEdge("a", ask, "c"),),
              result_transitions=(ResultEdge("c", "Maybe", "a"),))
    found = codes(validate_doa(doa))
    assert found == [E_UNDEFINED_TARGET]


def test_method_transition_from_internal_state():
    ask = MethodSig("Boolean", "ask", ())
    doa = Doa(external_states=("a",), internal_states=("c",),
              methods=(ask,), labels=("Ok",), initial="a",
              method_transitions=(MethodEdge("a", ask, "c"),
                                  MethodEdge("c", ask, "a")),
              result_transitions=(ResultEdge("c", "Ok", "a"),))
    found = codes(validate_doa(doa))
    assert found == [E_UNDEFINED_TARGET]
    assert "internal-choice" in validate_doa(doa)[0].message
