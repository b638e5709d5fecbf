"""Product of a game graph with the players' shared preference semi-automaton."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .errors import AutomatonMismatchError, CapacityError, InvalidProfileError, NonTerminatingError
from .game import GameGraph
from .preference import PreferenceAutomaton
from .preorder import Preorder, rank_map


@dataclass
class ProductGame:
    """Materialised reachable product. State ``v`` pairs game state ``states[v][0]``
    with automaton state ``states[v][1]``; ``v = 0`` is the initial state.

    Both players' preorders are lifted from the automaton states, so comparisons
    ignore the game component. Ranks are computed over the materialised states.
    """

    game: GameGraph
    p1: PreferenceAutomaton
    p2: PreferenceAutomaton
    states: list
    owner: list
    succ: list  # succ[v] = tuple of (action, v') sorted by action
    rank1: list
    rank2: list
    kmax1: int
    kmax2: int
    topo: list = field(default_factory=list, repr=False)  # sinks-last topological order
    origin: Optional[list] = field(default=None, repr=False)  # indices in the parent game, for subgames
    _preds: Optional[list] = field(default=None, repr=False)

    init = 0

    @property
    def n_states(self):
        return len(self.states)

    def automaton(self, player):
        return self.p1 if player == 1 else self.p2

    def rank(self, player):
        return self.rank1 if player == 1 else self.rank2

    def kmax(self, player):
        return self.kmax1 if player == 1 else self.kmax2

    def q(self, v):
        return self.states[v][1]

    def is_sink(self, v):
        return not self.succ[v]

    @property
    def sinks(self):
        return [v for v in range(self.n_states) if not self.succ[v]]

    @property
    def preds(self):
        if self._preds is None:
            preds = [[] for _ in range(self.n_states)]
            for v, out in enumerate(self.succ):
                for a, w in out:
                    preds[w].append(v)
            self._preds = preds
        return self._preds

    def automaton_states(self):
        return sorted({q for _, q in self.states})

    def geq(self, player, v, w) -> bool:
        """Lifted weak preference of ``player`` between product states."""
        return self.automaton(player).preorder.geq(self.states[v][1], self.states[w][1])

    def strictly(self, player, v, w) -> bool:
        return self.automaton(player).preorder.strictly(self.states[v][1], self.states[w][1])

    def lifted_preorder(self, player) -> Preorder:
        """The lifted preorder over all materialised states (quadratic; for small games)."""
        pre = self.automaton(player).preorder
        qs = [q for _, q in self.states]
        idx = [pre.index[q] for q in qs]
        return Preorder(range(self.n_states), pre.matrix[idx][:, idx], check=False)

    def name(self, v):
        s, q = self.states[v]
        return f"{self.game.names[s]}|{q}"

    def action_name(self, a):
        return self.game.action_names[a]

    def step(self, v, action):
        for a, w in self.succ[v]:
            if a == action:
                return w
        return None

    def subgame(self, keep) -> "ProductGame":
        """Keep the transitions ``(v, a)`` with ``keep(v, a)`` true and prune the unreachable part.

        States keep their ranks from this game; ``origin`` maps them back to it.
        """
        index = {0: 0}
        order = [0]
        succ = []
        for v in order:
            out = []
            for a, w in self.succ[v]:
                if not keep(v, a):
                    continue
                if w not in index:
                    index[w] = len(order)
                    order.append(w)
                out.append((a, index[w]))
            succ.append(tuple(out))
        topo = [index[v] for v in self.topo if v in index]
        origin = [v if self.origin is None else self.origin[v] for v in order]
        return ProductGame(self.game, self.p1, self.p2, [self.states[v] for v in order],
                           [self.owner[v] for v in order], succ,
                           [self.rank1[v] for v in order], [self.rank2[v] for v in order],
                           self.kmax1, self.kmax2, topo, origin)

    def to_json(self) -> dict:
        return {
            "states": [{"id": v, "game_state": self.game.names[s], "q": q,
                        "owner": self.owner[v], "rank1": self.rank1[v], "rank2": self.rank2[v],
                        "sink": not self.succ[v]} for v, (s, q) in enumerate(self.states)],
            "trans": [[v, self.game.action_names[a], w]
                      for v, out in enumerate(self.succ) for a, w in out],
            "init": 0,
            "kmax": [self.kmax1, self.kmax2],
        }

    def to_dot(self, highlight=(), marked_edges=(), name="product") -> str:
        highlight = set(highlight)
        marked_edges = set(marked_edges)
        lines = [f"digraph {name} {{", '  __init [shape=point, label=""];']
        for v, (s, q) in enumerate(self.states):
            shape = "box" if self.owner[v] == 2 else "circle"
            attrs = [f"shape={shape}", f'label="{v}"',
                     f'tooltip="state={self.game.names[s]} owner=P{self.owner[v]} q={q} '
                     f'rank1={self.rank1[v]} rank2={self.rank2[v]} sink={not self.succ[v]}"']
            if not self.succ[v]:
                attrs.append("peripheries=2")
            if v in highlight:
                attrs.append("style=filled, fillcolor=gold")
            lines.append(f"  {v} [{', '.join(attrs)}];")
        lines.append("  __init -> 0;")
        for v, out in enumerate(self.succ):
            for a, w in out:
                style = ", color=blue, penwidth=2" if (v, a) in marked_edges else ""
                lines.append(f'  {v} -> {w} [label="{self.game.action_names[a]}"{style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _letter_map(g: GameGraph, p: PreferenceAutomaton):
    if tuple(g.ap) == tuple(p.ap):
        return None
    if set(g.ap) != set(p.ap):
        raise AutomatonMismatchError(
            f"game AP {sorted(g.ap)} differs from automaton AP {sorted(p.ap)}")
    pos = {name: i for i, name in enumerate(p.ap)}
    remap = [pos[name] for name in g.ap]

    def convert(mask):
        out = 0
        for i, j in enumerate(remap):
            if mask >> i & 1:
                out |= 1 << j
        return out
    return convert


def _topological(succ):
    """Kahn order with sinks last, or None plus a witness cycle."""
    n = len(succ)
    indeg = [0] * n
    for out in succ:
        for _, w in out:
            indeg[w] += 1
    queue = deque(v for v in range(n) if indeg[v] == 0)
    order = []
    while queue:
        v = queue.popleft()
        order.append(v)
        for _, w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if len(order) == n:
        return order, None
    # every leftover state lies on or leads into a cycle among leftovers
    left = {v for v in range(n) if indeg[v] > 0}
    v = min(left)
    seen = {}
    path = []
    while v not in seen:
        seen[v] = len(path)
        path.append(v)
        v = next(w for _, w in succ[v] if w in left)
    return None, path[seen[v]:] + [v]


RANK_SCOPES = ("reachable", "automaton")


def build_product(g: GameGraph, p1: PreferenceAutomaton, p2: PreferenceAutomaton,
                  max_states: Optional[int] = None, rank_scope: str = "reachable") -> ProductGame:
    """Materialise the reachable product and its rank maps.

    With ``rank_scope="reachable"`` ranks peel the preorder restricted to the
    automaton states that occur in the product; ``"automaton"`` uses every
    automaton state, which keeps rank numbers comparable across games.

    Raises :class:`AutomatonMismatchError` when the automata do not share a
    semi-automaton, and :class:`NonTerminatingError` (with a witness cycle of
    product states) when some reachable cycle avoids the sinks.
    """
    if rank_scope not in RANK_SCOPES:
        raise ValueError(f"rank_scope must be one of {RANK_SCOPES}")
    if p1.semi_automaton() != p2.semi_automaton():
        raise AutomatonMismatchError("preference automata do not share the same semi-automaton")
    convert = _letter_map(g, p1)
    labels = g.labels if convert is None else [convert(m) for m in g.labels]
    delta = p1.delta
    start = (g.init, delta[p1.initial][labels[g.init]])
    index = {start: 0}
    states = [start]
    succ = []
    for s, q in states:
        out = []
        for a, s2 in g.succ[s]:
            nxt = (s2, delta[q][labels[s2]])
            w = index.get(nxt)
            if w is None:
                w = index[nxt] = len(states)
                states.append(nxt)
                if max_states is not None and len(states) > max_states:
                    raise CapacityError(f"product exceeds {max_states} states")
            out.append((a, w))
        succ.append(tuple(out))
    topo, cycle = _topological(succ)
    if cycle is not None:
        names = [f"{g.names[states[v][0]]}|{states[v][1]}" for v in cycle]
        raise NonTerminatingError(
            "product game is not sink-terminating; reachable cycle " + " -> ".join(names), cycle)
    owner = [g.owner[s] for s, _ in states]
    present = sorted({q for _, q in states}) if rank_scope == "reachable" else range(p1.n_states)
    r1 = rank_map(p1.preorder.restrict(present))
    r2 = rank_map(p2.preorder.restrict(present))
    rank1 = [r1.ranks[q] for _, q in states]
    rank2 = [r2.ranks[q] for _, q in states]
    return ProductGame(g, p1, p2, states, owner, succ, rank1, rank2, r1.kmax, r2.kmax, topo)


def trace_lift(h: ProductGame, path) -> list:
    """Lift a game path (state indices or names, starting at the initial state) to the product."""
    g = h.game
    if not path:
        raise InvalidProfileError("empty path")
    idx = [s if isinstance(s, int) else g.state_index(s) for s in path]
    if idx[0] != g.init:
        raise InvalidProfileError("path must start at the initial game state")
    trace = [0]
    v = 0
    for s_prev, s_next in zip(idx, idx[1:]):
        moves = [w for a, w in h.succ[v] if h.states[w][0] == s_next]
        if not moves:
            raise InvalidProfileError(
                f"no transition from {g.names[s_prev]!r} to {g.names[s_next]!r}")
        v = moves[0]
        trace.append(v)
    return trace


def reachable_sinks(h: ProductGame) -> list:
    """Sinks reachable from the initial state: the possible outcomes of any play."""
    return h.sinks


def product_to_json_text(h: ProductGame) -> str:
    return json.dumps(h.to_json(), sort_keys=True)
