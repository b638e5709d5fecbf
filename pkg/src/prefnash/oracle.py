"""Brute-force Nash ground truth by enumerating deterministic memoryless profiles.

Kept independent of :mod:`prefnash.solve` so it can serve as an oracle for it.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import InvalidProfileError, SizeGuardError
from .product import ProductGame

RELATIONS = ("strict", "weak")


def decision_states(h: ProductGame, player: int) -> list:
    return [v for v in range(h.n_states) if h.owner[v] == player and h.succ[v]]


def play(h: ProductGame, profile):
    """Path induced by ``profile = (pi1, pi2)`` (state -> action maps) and its last state."""
    path = [h.init]
    v = h.init
    while h.succ[v]:
        strat = profile[h.owner[v] - 1]
        if v not in strat:
            raise InvalidProfileError(f"P{h.owner[v]} strategy undefined at state {h.name(v)}")
        nxt = [w for a, w in h.succ[v] if a == strat[v]]
        if not nxt:
            raise InvalidProfileError(f"action {strat[v]!r} is not enabled at state {h.name(v)}")
        v = nxt[0]
        path.append(v)
        if len(path) > h.n_states:
            raise InvalidProfileError("play does not terminate")
    return path, v


@dataclass
class ProfileEnumeration:
    """All deterministic memoryless profiles, P1 strategies in the outer loop.

    Strategies are dicts over each player's decision states; iteration order
    follows state and action indices, so it is reproducible.
    """

    h: ProductGame
    max_states: int = 12
    max_profiles: int = 50_000

    def __post_init__(self):
        h = self.h
        if h.n_states > self.max_states:
            raise SizeGuardError(f"product has {h.n_states} states, guard is {self.max_states}")
        self.states = {p: decision_states(h, p) for p in (1, 2)}
        counts = {p: math.prod(len(h.succ[v]) for v in self.states[p]) for p in (1, 2)}
        if counts[1] * counts[2] > self.max_profiles:
            raise SizeGuardError(f"{counts[1] * counts[2]} profiles exceed guard {self.max_profiles}")
        self.counts = counts

    def strategies(self, player: int) -> list:
        states = self.states[player]
        choices = [[a for a, _ in self.h.succ[v]] for v in states]
        return [dict(zip(states, pick)) for pick in itertools.product(*choices)]

    def __len__(self):
        return self.counts[1] * self.counts[2]

    def __iter__(self):
        s2 = self.strategies(2)
        for pi1 in self.strategies(1):
            for pi2 in s2:
                yield pi1, pi2


def _better(h, player, relation, u, outcome):
    if relation == "strict":
        return h.strictly(player, u, outcome)
    return u != outcome and h.geq(player, u, outcome)


def brute_force_nash(h: ProductGame, relation: str = "strict", max_states: int = 12,
                     max_profiles: int = 50_000) -> list:
    """Profiles where neither player has a unilateral deviation to a better outcome.

    ``relation="strict"`` counts only strictly preferred outcomes as better;
    ``"weak"`` also counts a different, weakly preferred outcome.
    """
    if relation not in RELATIONS:
        raise ValueError(f"relation must be one of {RELATIONS}")
    enum = ProfileEnumeration(h, max_states, max_profiles)
    s1, s2 = enum.strategies(1), enum.strategies(2)
    table = [[play(h, (pi1, pi2))[1] for pi2 in s2] for pi1 in s1]
    column = [{table[i][j] for i in range(len(s1))} for j in range(len(s2))]
    row = [set(r) for r in table]
    nash = []
    for i, pi1 in enumerate(s1):
        for j, pi2 in enumerate(s2):
            o = table[i][j]
            if any(_better(h, 1, relation, u, o) for u in column[j]):
                continue
            if any(_better(h, 2, relation, u, o) for u in row[i]):
                continue
            nash.append((pi1, pi2))
    return nash


def nash_outcomes(h: ProductGame, relation: str = "strict", **guards) -> list:
    return sorted({play(h, p)[1] for p in brute_force_nash(h, relation, **guards)})


def profile_outcomes(h: ProductGame, **guards) -> list:
    """Outcomes of all enumerated profiles."""
    return sorted({play(h, p)[1] for p in ProfileEnumeration(h, **guards)})


def profile_to_json(h: ProductGame, profile) -> list:
    return [{"player": p, "strategy": {h.name(v): h.action_name(a)
                                       for v, a in sorted(profile[p - 1].items())}}
            for p in (1, 2)]
