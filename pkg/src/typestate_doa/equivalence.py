"""Observable equivalence of automata.

Two automata are equivalent when they exhibit the same behavior: every word
over methods and labels is either a trace of both or of neither, and traces
end in a final state of one exactly when they do in the other. Internal
state names are not observable; only the labels on their edges are.

The decision procedure runs a synchronous product search. Missing
transitions go to a distinguished dead sink, so a word on which one
automaton gets stuck and the other does not is itself distinguishing.
`equivalent` merges product pairs with union-find (near-linear);
`distinguishing_word` runs a plain breadth-first product search and returns
a shortest witness, which is what the CLI prints.
"""

from __future__ import annotations

from collections import deque

from .automaton import Doa, Symbol, validate_doa, with_implicit_end
from .diagnostics import has_errors
from .syntax.nodes import MethodSig

#: The dead sink of the totalized automaton.
_DEAD = None


def _checked(doa: Doa, which: str) -> Doa:
    doa = with_implicit_end(doa)
    diags = validate_doa(doa)
    if has_errors(diags):
        raise ValueError(f"{which} automaton is not valid: "
                         + "; ".join(str(d) for d in diags if d.is_error))
    return doa


def _alphabet(a: Doa, b: Doa) -> list[Symbol]:
    symbols: dict[Symbol, None] = {}
    for doa in (a, b):
        symbols.update(dict.fromkeys(doa.methods))
        symbols.update(dict.fromkeys(doa.labels))
    return sorted(symbols, key=str)


def _signature(doa: Doa, state: str | None) -> tuple[bool, bool]:
    """(is dead, is accepting): the observable classification of a state."""
    if state is _DEAD:
        return (True, False)
    return (False, state in doa.final_set)


def _successor(doa: Doa, state: str | None, symbol: Symbol) -> str | None:
    if state is _DEAD:
        return _DEAD
    return doa.step(state, symbol)


def equivalent(a: Doa, b: Doa) -> bool:
    """Decide behavioral equivalence by union-find over product pairs."""
    a = _checked(a, "first")
    b = _checked(b, "second")
    if _signature(a, a.initial) != _signature(b, b.initial):
        return False
    alphabet = _alphabet(a, b)

    # Nodes are (side, state); classes stay signature-homogeneous because a
    # merge is refused exactly when the signatures disagree.
    parent: dict[tuple[int, str | None], tuple[int, str | None]] = {}

    def find(node):
        parent.setdefault(node, node)
        root = node
        while parent[root] != root:
            root = parent[root]
        while parent[node] != root:  # path compression
            parent[node], node = root, parent[node]
        return root

    def class_signature(node) -> tuple[bool, bool]:
        side, state = node
        return _signature(a if side == 0 else b, state)

    pending = deque([(a.initial, b.initial)])
    parent[find((0, a.initial))] = find((1, b.initial))
    while pending:
        state_a, state_b = pending.popleft()
        for symbol in alphabet:
            succ_a = _successor(a, state_a, symbol)
            succ_b = _successor(b, state_b, symbol)
            root_a, root_b = find((0, succ_a)), find((1, succ_b))
            if root_a == root_b:
                continue
            if class_signature(root_a) != class_signature(root_b):
                return False
            parent[root_a] = root_b
            pending.append((succ_a, succ_b))
    return True


def distinguishing_word(a: Doa, b: Doa) -> list[Symbol] | None:
    """A shortest word observed differently by the two automata, or None.

    Breadth-first search over the synchronous product with a deterministic
    symbol order, so equal inputs always yield the same witness.
    """
    a = _checked(a, "first")
    b = _checked(b, "second")
    alphabet = _alphabet(a, b)

    start = (a.initial, b.initial)
    parents: dict[tuple, tuple | None] = {start: None}
    moves: dict[tuple, Symbol] = {}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        state_a, state_b = pair
        if _signature(a, state_a) != _signature(b, state_b):
            word: list[Symbol] = []
            node = pair
            while parents[node] is not None:
                word.append(moves[node])
                node = parents[node]
            word.reverse()
            return word
        for symbol in alphabet:
            succ = (_successor(a, state_a, symbol), _successor(b, state_b, symbol))
            if succ == (_DEAD, _DEAD) or succ in parents:
                continue
            parents[succ] = pair
            moves[succ] = symbol
            queue.append(succ)
    return None


def format_word(word: list[Symbol]) -> str:
    return "·".join(str(s) if isinstance(s, MethodSig) else s for s in word)
