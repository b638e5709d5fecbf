"""Deterministic two-player turn-based game graphs."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .errors import GameValidationError


@dataclass
class GameGraph:
    """Turn-based labeled transition system; states and actions are dense integers.

    ``succ[s]`` lists ``(action, target)`` pairs sorted by action index. A state
    without successors is a sink. Labels are bitmasks over ``ap``.
    """

    ap: tuple
    names: list
    owner: list
    labels: list
    action_names: list
    action_owner: list
    action_cost: list
    succ: list
    init: int = 0
    _index: dict = field(default=None, repr=False, compare=False)

    @property
    def n_states(self):
        return len(self.names)

    def state_index(self, name):
        if self._index is None:
            self._index = {n: i for i, n in enumerate(self.names)}
        return self._index[name]

    def is_sink(self, s) -> bool:
        return not self.succ[s]

    def label_atoms(self, s) -> frozenset:
        return frozenset(p for i, p in enumerate(self.ap) if self.labels[s] >> i & 1)

    def step(self, s, action):
        for a, t in self.succ[s]:
            if a == action:
                return t
        return None

    def n_transitions(self):
        return sum(len(x) for x in self.succ)

    def to_json(self) -> dict:
        return {
            "ap": list(self.ap),
            "states": [{"id": self.names[s], "owner": self.owner[s],
                        "label": sorted(self.label_atoms(s))} for s in range(self.n_states)],
            "actions": [{"id": self.action_names[a], "owner": self.action_owner[a],
                         "cost": self.action_cost[a]} for a in range(len(self.action_names))],
            "trans": [[self.names[s], self.action_names[a], self.names[t]]
                      for s in range(self.n_states) for a, t in self.succ[s]],
            "init": self.names[self.init],
        }


def _mask(ap_index, names):
    m = 0
    for p in names:
        m |= 1 << ap_index[p]
    return m


def load_game(document) -> GameGraph:
    """Validate a game JSON document (dict, JSON text, or path) and build the graph.

    Every problem found is reported together in one :class:`GameValidationError`.
    """
    if isinstance(document, (str, bytes)):
        text = document
        if isinstance(text, str) and not text.lstrip().startswith("{"):
            with open(text) as fh:
                text = fh.read()
        try:
            document = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GameValidationError([f"schema: invalid JSON ({exc})"]) from None
    problems = []
    if not isinstance(document, dict):
        raise GameValidationError(["schema: document must be a JSON object"])
    for key in ("ap", "states", "actions", "trans", "init"):
        if key not in document:
            problems.append(f"schema: missing key {key!r}")
    if problems:
        raise GameValidationError(problems)

    ap = document["ap"]
    if not isinstance(ap, list) or not all(isinstance(p, str) for p in ap):
        problems.append("schema: 'ap' must be a list of strings")
        ap = []
    ap_index = {p: i for i, p in enumerate(ap)}

    names, owner, labels = [], [], []
    state_index = {}
    for k, st in enumerate(document["states"]):
        if not isinstance(st, dict) or "id" not in st or "owner" not in st:
            problems.append(f"schema: state #{k} needs 'id' and 'owner'")
            continue
        sid = st["id"]
        if sid in state_index:
            problems.append(f"schema: duplicate state id {sid!r}")
            continue
        if st["owner"] not in (1, 2):
            problems.append(f"schema: state {sid!r} owner must be 1 or 2")
        unknown = [p for p in st.get("label", []) if p not in ap_index]
        if unknown:
            problems.append(f"schema: state {sid!r} label uses unknown atoms {unknown}")
        state_index[sid] = len(names)
        names.append(sid)
        owner.append(st["owner"])
        labels.append(_mask(ap_index, [p for p in st.get("label", []) if p in ap_index]))

    action_names, action_owner, action_cost = [], [], []
    action_index = {}
    for k, act in enumerate(document["actions"]):
        if not isinstance(act, dict) or "id" not in act or "owner" not in act:
            problems.append(f"schema: action #{k} needs 'id' and 'owner'")
            continue
        aid = act["id"]
        if aid in action_index:
            problems.append(f"schema: duplicate action id {aid!r}")
            continue
        if act["owner"] not in (1, 2):
            problems.append(f"schema: action {aid!r} owner must be 1 or 2")
        cost = act.get("cost", 1)
        if cost not in (0, 1):
            problems.append(f"schema: action {aid!r} cost must be 0 or 1")
        action_index[aid] = len(action_names)
        action_names.append(aid)
        action_owner.append(act["owner"])
        action_cost.append(cost)

    succ = [dict() for _ in names]
    for k, tr in enumerate(document["trans"]):
        if not isinstance(tr, (list, tuple)) or len(tr) != 3:
            problems.append(f"schema: transition #{k} must be [src, action, dst]")
            continue
        src, act, dst = tr
        bad = False
        for ref, table, what in ((src, state_index, "state"), (act, action_index, "action"),
                                 (dst, state_index, "state")):
            if ref not in table:
                problems.append(f"dangling reference: transition #{k} names unknown {what} {ref!r}")
                bad = True
        if bad:
            continue
        s, a, t = state_index[src], action_index[act], state_index[dst]
        if action_owner[a] != owner[s]:
            problems.append(f"owner violation: state {src!r} (P{owner[s]}) enables "
                            f"action {act!r} of P{action_owner[a]}")
        if a in succ[s] and succ[s][a] != t:
            problems.append(f"nondeterministic transition: ({src!r}, {act!r}) leads to "
                            f"{names[succ[s][a]]!r} and {dst!r}")
            continue
        succ[s][a] = t

    init = document["init"]
    if init not in state_index:
        problems.append(f"dangling reference: initial state {init!r} is not declared")
    if problems:
        raise GameValidationError(problems)
    return GameGraph(tuple(ap), names, owner, labels, action_names, action_owner,
                     action_cost, [sorted(d.items()) for d in succ], state_index[init])


def make_game(ap: Sequence[str], states: dict, actions: dict, trans, init) -> GameGraph:
    """Build a game from Python literals.

    ``states`` maps id -> (owner, label atoms); ``actions`` maps id -> owner or
    (owner, cost); ``trans`` is an iterable of (src, action, dst).
    """
    doc = {
        "ap": list(ap),
        "states": [{"id": s, "owner": o, "label": sorted(lab)} for s, (o, lab) in states.items()],
        "actions": [{"id": a, "owner": v[0], "cost": v[1]} if isinstance(v, tuple)
                    else {"id": a, "owner": v, "cost": 1} for a, v in actions.items()],
        "trans": [list(t) for t in trans],
        "init": init,
    }
    return load_game(doc)


def unroll_horizon(g: GameGraph, horizon: int, cost=None) -> GameGraph:
    """Pair every state with a step counter in ``0..horizon``.

    Taking an action adds its cost (0 or 1) to the counter; states whose counter
    equals ``horizon`` are sinks. ``cost`` overrides the actions' own cost tags
    and may be a dict keyed by action name or a callable. Only the part reachable
    from the initial state is built. The result is sink-terminating whenever the
    cost-0 actions alone cannot form a cycle.
    """
    if horizon < 0:
        raise ValueError("horizon must be non-negative")
    if cost is None:
        costs = list(g.action_cost)
    elif callable(cost):
        costs = [cost(n) for n in g.action_names]
    else:
        costs = [cost.get(n, c) for n, c in zip(g.action_names, g.action_cost)]
    start = (g.init, 0)
    index = {start: 0}
    order = [start]
    succ = []
    for s, t in order:
        out = []
        if t < horizon:
            for a, s2 in g.succ[s]:
                nxt = (s2, t + costs[a])
                if nxt not in index:
                    index[nxt] = len(order)
                    order.append(nxt)
                out.append((a, index[nxt]))
        succ.append(out)
    return GameGraph(g.ap, [f"{g.names[s]}@{t}" for s, t in order],
                     [g.owner[s] for s, _ in order], [g.labels[s] for s, _ in order],
                     list(g.action_names), list(g.action_owner), costs, succ, 0)
