"""Two-drone package delivery gridworlds as turn-based game graphs.

Drone A (P1) and drone B (P2) alternate turns on a bouncy grid. A turn may
start with up to ``instant_limit`` instantaneous actions (``pick``,
``give<i>``, ``attack``; no time cost) and always ends with a move or a pass,
each costing one tick of the shared clock. States at the time budget are sinks.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .errors import ScenarioConfigError
from .game import GameGraph

DIRECTIONS = {"N": (0, 1), "E": (1, 0), "S": (0, -1), "W": (-1, 0)}

# package carrier codes
AT_PICKUP, WITH_A, WITH_B, DELIVERED = 0, 1, 2, 3


def _cell(value, what):
    if not isinstance(value, (list, tuple)) or len(value) != 2 or \
            not all(isinstance(x, int) for x in value):
        raise ScenarioConfigError(f"{what} must be an [x, y] pair of integers, got {value!r}")
    return (int(value[0]), int(value[1]))


@dataclass
class DroneScenarioConfig:
    """Grid layout and rules. Cells are ``(x, y)`` with N increasing ``y``.

    ``walls`` lists pairs of adjacent cells with a wall between them. Package
    ``i`` (1-based) starts at ``pickups[i-1]`` and is delivered at
    ``destinations[i-1]``.
    """

    width: int = 5
    height: int = 5
    walls: list = field(default_factory=list)
    obstacles: list = field(default_factory=list)
    pickups: list = field(default_factory=list)
    destinations: list = field(default_factory=list)
    start_a: tuple = (0, 0)
    start_b: Optional[tuple] = None
    tmax: int = 10
    first: str = "A"
    instant_limit: int = 1
    stop_when_delivered: bool = True
    name: str = "scenario"

    def validate(self):
        problems = []
        if self.width < 1 or self.height < 1:
            problems.append("grid must be at least 1x1")
        if self.tmax < 0:
            problems.append("tmax must be non-negative")
        if self.first != "A":
            problems.append("drone A moves first")
        if self.instant_limit < 0:
            problems.append("instant_limit must be non-negative")
        if len(self.pickups) != len(self.destinations):
            problems.append("pickups and destinations must have the same length")
        if not 1 <= len(self.pickups) <= 3:
            problems.append("between one and three packages are supported")
        obstacles = set(self.obstacles)

        def check(c, what, free=True):
            if not (0 <= c[0] < self.width and 0 <= c[1] < self.height):
                problems.append(f"{what} {c} lies outside the {self.width}x{self.height} grid")
            elif free and c in obstacles:
                problems.append(f"{what} {c} lies on an obstacle")

        for c in self.obstacles:
            check(c, "obstacle", free=False)
        for i, c in enumerate(self.pickups, 1):
            check(c, f"pickup p{i}")
        for i, c in enumerate(self.destinations, 1):
            check(c, f"destination d{i}")
        check(self.start_a, "drone A start")
        if self.start_b is not None:
            check(self.start_b, "drone B start")
        for u, v in self.walls:
            check(u, "wall end", free=False)
            check(v, "wall end", free=False)
            if abs(u[0] - v[0]) + abs(u[1] - v[1]) != 1:
                problems.append(f"wall {u}-{v} must separate two adjacent cells")
        if len(set(self.pickups)) != len(self.pickups):
            problems.append("pickup cells must be distinct")
        if problems:
            raise ScenarioConfigError("; ".join(problems))
        return self

    @property
    def ap(self):
        return tuple(f"d{i}" for i in range(1, len(self.pickups) + 1))

    def cells(self):
        return [(x, y) for y in range(self.height) for x in range(self.width)]

    def eligible_b_cells(self):
        """Cells where drone B may start: free cells other than A's start."""
        blocked = set(self.obstacles) | {self.start_a}
        return [c for c in self.cells() if c not in blocked]

    def with_b(self, cell) -> "DroneScenarioConfig":
        data = dict(self.__dict__)
        data["start_b"] = tuple(cell)
        return DroneScenarioConfig(**data).validate()

    def to_json(self) -> dict:
        return {"name": self.name, "width": self.width, "height": self.height,
                "walls": [[list(u), list(v)] for u, v in self.walls],
                "obstacles": [list(c) for c in self.obstacles],
                "pickups": [list(c) for c in self.pickups],
                "destinations": [list(c) for c in self.destinations],
                "start_a": list(self.start_a),
                "start_b": None if self.start_b is None else list(self.start_b),
                "tmax": self.tmax, "first": self.first, "instant_limit": self.instant_limit,
                "stop_when_delivered": self.stop_when_delivered}

    @classmethod
    def from_json(cls, doc: dict) -> "DroneScenarioConfig":
        try:
            cfg = cls(
                width=int(doc.get("width", 5)), height=int(doc.get("height", 5)),
                walls=[(_cell(u, "wall end"), _cell(v, "wall end")) for u, v in doc.get("walls", [])],
                obstacles=[_cell(c, "obstacle") for c in doc.get("obstacles", [])],
                pickups=[_cell(c, "pickup") for c in doc["pickups"]],
                destinations=[_cell(c, "destination") for c in doc["destinations"]],
                start_a=_cell(doc.get("start_a", [0, 0]), "start_a"),
                start_b=None if doc.get("start_b") is None else _cell(doc["start_b"], "start_b"),
                tmax=int(doc.get("tmax", 10)), first=doc.get("first", "A"),
                instant_limit=int(doc.get("instant_limit", 1)),
                stop_when_delivered=bool(doc.get("stop_when_delivered", True)),
                name=str(doc.get("name", "scenario")))
        except KeyError as exc:
            raise ScenarioConfigError(f"missing config key {exc.args[0]!r}") from None
        except (TypeError, ValueError) as exc:
            raise ScenarioConfigError(f"malformed config: {exc}") from None
        return cfg.validate()


def move_table(c: DroneScenarioConfig) -> dict:
    """``table[cell][direction]`` is the cell reached, bouncing back when blocked."""
    walls = {frozenset(w) for w in c.walls}
    obstacles = set(c.obstacles)
    table = {}
    for cell in c.cells():
        row = {}
        for d, (dx, dy) in DIRECTIONS.items():
            nxt = (cell[0] + dx, cell[1] + dy)
            blocked = (not (0 <= nxt[0] < c.width and 0 <= nxt[1] < c.height)
                       or nxt in obstacles or frozenset((cell, nxt)) in walls)
            row[d] = cell if blocked else nxt
        table[cell] = row
    return table


def _deliver(carriers, pos_a, pos_b, dests):
    out = list(carriers)
    for i, who in enumerate(carriers):
        if (who == WITH_A and pos_a == dests[i]) or (who == WITH_B and pos_b == dests[i]):
            out[i] = DELIVERED
    return tuple(out)


def _action_names(n_packages):
    names = []
    for drone in ("A", "B"):
        names += [f"{drone}:{d}" for d in DIRECTIONS] + [f"{drone}:pass", f"{drone}:pick"]
        names += [f"{drone}:give{i}" for i in range(1, n_packages + 1)] + [f"{drone}:attack"]
    return names


def build_drone_scenario(c: DroneScenarioConfig, start_b=None) -> GameGraph:
    """Explore the reachable state space of the scenario from its initial state.

    A state is ``(posA, posB, turn, carriers, aliveA, aliveB, clock, acted)``;
    ``acted`` counts the instantaneous actions already taken this turn.
    """
    c = c.validate()
    start_b = c.start_b if start_b is None else tuple(start_b)
    if start_b is None:
        raise ScenarioConfigError("drone B start cell is not set")
    if start_b in set(c.obstacles) or not (0 <= start_b[0] < c.width and 0 <= start_b[1] < c.height):
        raise ScenarioConfigError(f"drone B cannot start at {start_b}")
    n_pk = len(c.pickups)
    moves = move_table(c)
    dests = list(c.destinations)
    pickups = list(c.pickups)
    names = _action_names(n_pk)
    aid = {n: i for i, n in enumerate(names)}
    per_drone = len(names) // 2
    owner_of_action = [1] * per_drone + [2] * per_drone
    cost = [0 if n.split(":")[1] in ("pick", "attack") or n.split(":")[1].startswith("give") else 1
            for n in names]
    ids = {}
    for k, drone in enumerate(("A", "B")):
        ids[k] = {"move": [(d, aid[f"{drone}:{d}"]) for d in DIRECTIONS],
                  "pass": aid[f"{drone}:pass"], "pick": aid[f"{drone}:pick"],
                  "give": [aid[f"{drone}:give{i}"] for i in range(1, n_pk + 1)],
                  "attack": aid[f"{drone}:attack"]}
    all_delivered = (DELIVERED,) * n_pk
    limit = c.instant_limit
    tmax = c.tmax

    start = (c.start_a, start_b, 0, _deliver((AT_PICKUP,) * n_pk, c.start_a, start_b, dests),
             True, True, 0, 0)
    index = {start: 0}
    order = [start]
    succ = []
    for st in order:
        pa, pb, turn, carriers, alive_a, alive_b, clock, acted = st
        out = []
        if clock < tmax and not (c.stop_when_delivered and carriers == all_delivered):
            me_alive = alive_a if turn == 0 else alive_b
            other_alive = alive_b if turn == 0 else alive_a
            mine = pa if turn == 0 else pb
            other = pb if turn == 0 else pa
            holder, receiver = (WITH_A, WITH_B) if turn == 0 else (WITH_B, WITH_A)
            act = ids[turn]
            nxt_states = []
            if me_alive:
                for d, a in act["move"]:
                    cell = moves[mine][d]
                    npa, npb = (cell, pb) if turn == 0 else (pa, cell)
                    nxt_states.append((a, (npa, npb, 1 - turn, _deliver(carriers, npa, npb, dests),
                                           alive_a, alive_b, clock + 1, 0)))
            nxt_states.append((act["pass"], (pa, pb, 1 - turn, carriers, alive_a, alive_b,
                                             clock + 1, 0)))
            if me_alive and acted < limit:
                if any(carriers[i] == AT_PICKUP and pickups[i] == mine for i in range(n_pk)):
                    nc = tuple(holder if (w == AT_PICKUP and pickups[i] == mine) else w
                               for i, w in enumerate(carriers))
                    nxt_states.append((act["pick"], (pa, pb, turn, _deliver(nc, pa, pb, dests),
                                                     alive_a, alive_b, clock, acted + 1)))
                if other_alive and max(abs(mine[0] - other[0]), abs(mine[1] - other[1])) <= 1:
                    for i in range(n_pk):
                        if carriers[i] == holder:
                            nc = carriers[:i] + (receiver,) + carriers[i + 1:]
                            nxt_states.append((act["give"][i], (pa, pb, turn,
                                                                _deliver(nc, pa, pb, dests),
                                                                alive_a, alive_b, clock, acted + 1)))
                if other_alive and mine == other:
                    na, nb = (alive_a, False) if turn == 0 else (False, alive_b)
                    nxt_states.append((act["attack"], (pa, pb, turn, carriers, na, nb, clock,
                                                       acted + 1)))
            for a, ns in nxt_states:
                w = index.get(ns)
                if w is None:
                    w = index[ns] = len(order)
                    order.append(ns)
                out.append((a, w))
            out.sort()
        succ.append(out)

    state_names = []
    owner = []
    labels = []
    for pa, pb, turn, carriers, alive_a, alive_b, clock, acted in order:
        state_names.append(
            f"A{pa[0]}{pa[1]}{'' if alive_a else 'x'} B{pb[0]}{pb[1]}{'' if alive_b else 'x'} "
            f"{'AB'[turn]} {''.join('-ABd'[w] for w in carriers)} t{clock}{'*' * acted}")
        owner.append(turn + 1)
        labels.append(sum(1 << i for i, w in enumerate(carriers) if w == DELIVERED))
    return GameGraph(c.ap, state_names, owner, labels, names, owner_of_action, cost, succ, 0)


# ---------------------------------------------------------------------------
# Shipped scenarios

DATA = Path(__file__).parent / "data"


@dataclass
class Scenario:
    """A drone layout together with both drones' preference specifications."""

    config: DroneScenarioConfig
    spec_a: str
    spec_b: str
    empty_policy_a: str = "bottom"
    empty_policy_b: str = "bottom"
    description: str = ""


def load_scenario(path) -> Scenario:
    """Read a scenario file: layout fields plus ``spec_a``/``spec_b`` texts or file names."""
    path = Path(path)
    if not path.exists() and (DATA / path).exists():
        path = DATA / path
    try:
        doc = json.loads(path.read_text())
    except FileNotFoundError:
        raise ScenarioConfigError(f"scenario file {str(path)!r} not found") from None
    except json.JSONDecodeError as exc:
        raise ScenarioConfigError(f"scenario file is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ScenarioConfigError("scenario file must hold a JSON object")
    layout = doc.get("layout", doc)
    if isinstance(layout, str):
        layout = json.loads((path.parent / layout).read_text())
    config = DroneScenarioConfig.from_json({**layout, **doc.get("overrides", {})})

    def spec(key):
        text = doc.get(key)
        if text is None:
            raise ScenarioConfigError(f"scenario file lacks {key!r}")
        candidate = path.parent / text
        return candidate.read_text() if candidate.suffix == ".prefltlf" else text

    return Scenario(config, spec("spec_a"), spec("spec_b"),
                    doc.get("empty_policy_a", "bottom"), doc.get("empty_policy_b", "bottom"),
                    doc.get("description", ""))


def shipped_scenarios() -> dict:
    """Shipped scenario files (layout plus specifications), keyed by name."""
    found = {}
    for p in sorted(DATA.glob("*.json")):
        if "spec_a" in json.loads(p.read_text()):
            found[p.stem] = p
    return found


# ---------------------------------------------------------------------------
# Sweeps over drone B's start cell

@dataclass
class CellResult:
    cell: tuple
    best: tuple  # (m1, m2): best rank each drone reaches with full cooperation
    guaranteed: tuple  # (k1*, k2*): rank each drone can force alone
    needs: tuple  # needs-cooperation flags
    n_states: int

    @property
    def max_reachable_rank(self):
        return self.best[0]


def scenario_automata(s: Scenario):
    from .preference import build_preference_automaton, parse_prefspec

    ap = s.config.ap
    p1 = build_preference_automaton(parse_prefspec(s.spec_a), ap, s.empty_policy_a)
    p2 = build_preference_automaton(parse_prefspec(s.spec_b), ap, s.empty_policy_b)
    return p1, p2


def scenario_product(s: Scenario, cell, automata=None, max_states=None):
    """Product game for drone B starting at ``cell``; ranks use the full automaton preorders."""
    from .product import build_product

    p1, p2 = automata or scenario_automata(s)
    g = build_drone_scenario(s.config, cell)
    return build_product(g, p1, p2, max_states=max_states, rank_scope="automaton")


def analyze_cell(s: Scenario, cell, automata=None, max_states=None) -> CellResult:
    from .solve import best_cooperative_rank, max_sure_winning

    h = scenario_product(s, cell, automata, max_states)
    k = tuple(max_sure_winning(h, p).k for p in (1, 2))
    m = tuple(best_cooperative_rank(h, p) for p in (1, 2))
    return CellResult(tuple(cell), m, k, (k[0] > m[0], k[1] > m[1]), h.n_states)


def sweep(s: Scenario, cells=None, max_states=None) -> dict:
    """Analyse every eligible start cell of drone B (or the given ``cells``)."""
    automata = scenario_automata(s)
    cells = s.config.eligible_b_cells() if cells is None else [tuple(c) for c in cells]
    return {c: analyze_cell(s, c, automata, max_states) for c in cells}


def _flag(b):
    return "T" if b else "F"


GRIDS = {
    "max_reachable_rank": lambda r: r.max_reachable_rank,
    "guaranteed_rank_a": lambda r: r.guaranteed[0],
    "cooperation": lambda r: f"({_flag(r.needs[0])},{_flag(r.needs[1])})",
}


def grid(config: DroneScenarioConfig, results: dict, kind: str) -> list:
    """Rows from the top of the map (largest ``y``) down; -1 marks cells not analysed."""
    value = GRIDS[kind]
    return [[value(results[(x, y)]) if (x, y) in results else -1 for x in range(config.width)]
            for y in reversed(range(config.height))]


def write_grids(out_dir, config: DroneScenarioConfig, results: dict) -> list:
    import csv

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for kind in GRIDS:
        path = out_dir / f"{kind}.csv"
        with open(path, "w", newline="") as fh:
            csv.writer(fh, lineterminator="\n").writerows(grid(config, results, kind))
        written.append(path)
    return written
