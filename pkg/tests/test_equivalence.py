import random

import pytest
from hypothesis import given, settings, strategies as st

from typestate_doa import (
    Doa,
    MethodSig,
    compile_ast,
    distinguishing_word,
    equivalent,
    format_word,
    parse,
)
from typestate_doa.automaton import MethodEdge, ResultEdge

from generators import oracle_equivalent, perturb, random_doa, rename_states

TAKE_OFF = MethodSig("void", "takeOff", ())
MOVE_TO = MethodSig("void", "moveTo", ("double", "double"))
STOP = MethodSig("void", "stop", ())


def test_every_automaton_equals_itself(basic, drone_v1, drone_v2):
    for doa in (basic, drone_v1, drone_v2):
        assert equivalent(doa, doa)
        assert distinguishing_word(doa, doa) is None


def test_internal_names_are_not_observable(drone_v2):
    renamed = Doa(
        external_states=drone_v2.external_states,
        internal_states=("decision",),
        methods=drone_v2.methods,
        labels=drone_v2.labels,
        initial=drone_v2.initial,
        finals=drone_v2.finals,
        method_transitions=tuple(
            MethodEdge(e.source, e.sig, "decision" if e.target == "_C1" else e.target)
            for e in drone_v2.method_transitions),
        result_transitions=tuple(
            ResultEdge("decision", e.label, e.target)
            for e in drone_v2.result_transitions),
    )
    assert equivalent(drone_v2, renamed)


def test_drone_versions_differ(drone_v1, drone_v2):
    assert not equivalent(drone_v1, drone_v2)
    word = distinguishing_word(drone_v1, drone_v2)
    assert word is not None
    assert len(word) == 3
    # the witness is a trace of exactly one of the two
    from typestate_doa import Stuck
    run_v1 = drone_v1.run(drone_v1.initial, word)
    run_v2 = drone_v2.run(drone_v2.initial, word)
    assert isinstance(run_v1, Stuck) != isinstance(run_v2, Stuck)


def test_distinguishing_word_is_deterministic(drone_v1, drone_v2):
    first = distinguishing_word(drone_v1, drone_v2)
    second = distinguishing_word(drone_v1, drone_v2)
    assert first == second == [TAKE_OFF, MOVE_TO, MOVE_TO]
    assert format_word(first) == (
        "void takeOff()·void moveTo(double, double)·void moveTo(double, double)")


def test_acceptance_matters_not_just_traces():
    accepting = Doa(external_states=("a",), initial="a", finals=("a",))
    silent = Doa(external_states=("a",), initial="a")
    assert not equivalent(accepting, silent)
    assert distinguishing_word(accepting, silent) == []


def test_invalid_input_is_a_precondition_violation():
    broken = Doa(external_states=("a",), methods=(TAKE_OFF,), initial="a",
                 method_transitions=(MethodEdge("a", TAKE_OFF, "ghost"),))
    with pytest.raises(ValueError):
        equivalent(broken, broken)


def test_round_trip_of_drone_is_equivalent(drone_v2):
    from typestate_doa import decompile, render
    text = render(decompile("DroneProtocol", drone_v2))
    assert equivalent(compile_ast(parse(text)), drone_v2)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_equivalence_is_reflexive_and_rename_invariant(seed):
    doa = random_doa(random.Random(seed))
    assert equivalent(doa, doa)
    assert equivalent(doa, rename_states(doa))


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_equivalence_is_symmetric(seed):
    rng = random.Random(seed)
    a = random_doa(rng)
    b = perturb(rng, a) if rng.random() < 0.7 else random_doa(rng)
    assert equivalent(a, b) == equivalent(b, a)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_witness_agrees_with_verdict(seed):
    rng = random.Random(seed)
    a = random_doa(rng)
    b = perturb(rng, a) if rng.random() < 0.7 else random_doa(rng)
    assert (distinguishing_word(a, b) is None) == equivalent(a, b)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_transitivity_through_renames(seed):
    rng = random.Random(seed)
    a = random_doa(rng)
    b = rename_states(a, "_x")
    c = rename_states(a, "_y")
    assert equivalent(a, b) and equivalent(b, c) and equivalent(a, c)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_matches_brute_force_oracle(seed):
    rng = random.Random(seed)
    a = random_doa(rng)
    roll = rng.random()
    if roll < 0.4:
        b = rename_states(a)
    elif roll < 0.8:
        b = perturb(rng, a)
    else:
        b = random_doa(rng)
    assert equivalent(a, b) == oracle_equivalent(a, b)
