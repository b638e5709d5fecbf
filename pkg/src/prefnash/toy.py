"""Hand-made toy games whose outcomes are compared directly.

A toy game is a finite tree (or DAG) of decision states whose leaves carry an
outcome name. Each outcome gets its own atom, and a tagging automaton moves to
the outcome's state when its atom is seen, so a preorder over outcome names
becomes a preference automaton over which both players' products agree.
"""
from __future__ import annotations

from .game import GameGraph, make_game
from .preference import PreferenceAutomaton
from .preorder import Preorder
from .product import ProductGame, build_product

START = "start"  # automaton state before any outcome is seen; incomparable to every outcome


def tree_game(tree: dict, leaves: dict, init=None) -> GameGraph:
    """``tree`` maps state -> (owner, [(action, child), ...]); ``leaves`` maps sink -> outcome.

    Outcome atoms are the outcome names in order of first appearance in ``leaves``.
    Action names must be unique per owner; an action reused at several states is fine.
    """
    outcomes = list(dict.fromkeys(leaves.values()))
    states = {s: (owner, ()) for s, (owner, _) in tree.items()}
    states.update({s: (1, (o,)) for s, o in leaves.items()})
    actions = {}
    trans = []
    for s, (owner, moves) in tree.items():
        for a, t in moves:
            if actions.setdefault(a, owner) != owner:
                raise ValueError(f"action {a!r} used by both players")
            trans.append((s, a, t))
    return make_game(outcomes, states, actions, trans, next(iter(tree)) if init is None else init)


def tag_automaton(outcomes, better) -> PreferenceAutomaton:
    """Automaton over one atom per outcome; state ``i + 1`` means outcome ``i`` was seen.

    ``better`` lists ``(x, y)`` pairs of outcome names meaning x is weakly
    preferred to y; the relation is closed transitively.
    """
    outcomes = list(outcomes)
    n = len(outcomes)
    delta = []
    for q in range(n + 1):
        row = []
        for letter in range(1 << n):
            row.append(q if letter == 0 else (letter & -letter).bit_length())
        delta.append(row)
    pos = {o: i + 1 for i, o in enumerate(outcomes)}
    pre = Preorder.from_pairs(range(n + 1), [(pos[x], pos[y]) for x, y in better])
    return PreferenceAutomaton.from_parts(tuple(outcomes), 0, delta, pre)


def strict_chain(*names):
    """Pairs making ``names[0]`` strictly best, then ``names[1]`` and so on."""
    return list(zip(names, names[1:]))


def toy_product(tree: dict, leaves: dict, better1, better2, rank_scope="reachable") -> ProductGame:
    g = tree_game(tree, leaves)
    p1 = tag_automaton(g.ap, better1)
    p2 = tag_automaton(g.ap, better2)
    return build_product(g, p1, p2, rank_scope=rank_scope)


def sink_named(h: ProductGame, game_state) -> int:
    s = h.game.state_index(game_state)
    found = [v for v in h.sinks if h.states[v][0] == s]
    if len(found) != 1:
        raise KeyError(game_state)
    return found[0]


def state_named(h: ProductGame, game_state) -> int:
    s = h.game.state_index(game_state)
    return next(v for v in range(h.n_states) if h.states[v][0] == s)
