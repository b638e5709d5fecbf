"""Equilibrium analysis on product games.

Two routes are offered side by side:

* the alignment-specific characterisations (maximal reachable outcomes,
  maximal sure winning pairs, cooperation analysis, the restricted game and
  Pareto states), reported as ``NashReport.characterized``;
* an exact attractor-based computation of every outcome that some pure
  memoryless Nash profile can end in, reported as ``NashReport.outcomes``.

An outcome ``v`` is a Nash outcome exactly when some path from the initial
state to ``v`` avoids both P1's attractor to the sinks P1 strictly prefers to
``v`` and P2's attractor to the sinks P2 strictly prefers to ``v``: the players
follow that path and each punishes the other's deviations by staying outside
the corresponding attractor.
"""
from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import EmptyParetoError, InvalidProfileError, WrongAlignmentError
from .product import ProductGame

COOPERATIVE = "cooperative"
AGNOSTIC = "agnostic"
ATTITUDES = (COOPERATIVE, AGNOSTIC)


class Alignment(str, enum.Enum):
    FULLY_ALIGNED = "fully_aligned"
    COMPLETELY_OPPOSITE = "completely_opposite"
    PARTIALLY_ALIGNED = "partially_aligned"


# Case tags naming the characterisation that produced ``characterized``.
CASE_ALIGNED = "aligned-maximal-reachable"
CASE_OPPOSITE = "opposite-maximal-sure-winning"
CASE_NO_COOPERATION = "partial-no-cooperation-needed"
CASE_COOPERATIVE_HELPER = "partial-cooperative-helper"
CASE_AGNOSTIC_HELPER = "partial-agnostic-helper"
CASE_PARETO = "partial-pareto"

CASE_CLAUSES = {
    CASE_ALIGNED: "outcome is not a maximal reachable state",
    CASE_OPPOSITE: "outcome is not reached by a pair of maximal sure winning strategies",
    CASE_NO_COOPERATION: "outcome does not attain both players' best reachable ranks",
    CASE_COOPERATIVE_HELPER: "outcome is not the needy player's best among the helper's "
                             "maximal sure winning outcomes",
    CASE_AGNOSTIC_HELPER: "outcome is not reached by the needy player's maximal sure winning "
                          "strategy in the restricted game",
    CASE_PARETO: "outcome is not a Pareto state",
}


@dataclass
class Strategy:
    """Memoryless strategy: state -> tuple of allowed actions (singletons when deterministic)."""

    player: int
    actions: dict

    @property
    def deterministic(self) -> bool:
        return all(len(a) == 1 for a in self.actions.values())

    def choice(self, v):
        return self.actions[v][0]

    def as_map(self) -> dict:
        return {v: acts[0] for v, acts in self.actions.items()}


def opponent(player):
    return 3 - player


# ---------------------------------------------------------------------------
# Attractors and sure winning

def attractor(h: ProductGame, player: int, target):
    """Least set from which ``player`` forces a visit to ``target``.

    Returns the region (a frozenset) and the permissive strategy keeping, at the
    player's non-target states in the region, exactly the actions that stay in it.
    """
    n = h.n_states
    inside = [False] * n
    remaining = [len(out) for out in h.succ]
    queue = deque()
    for v in target:
        if not inside[v]:
            inside[v] = True
            queue.append(v)
    preds = h.preds
    owner = h.owner
    while queue:
        w = queue.popleft()
        for v in preds[w]:
            if inside[v]:
                continue
            if owner[v] == player:
                inside[v] = True
                queue.append(v)
            else:
                remaining[v] -= 1
                if remaining[v] == 0:
                    inside[v] = True
                    queue.append(v)
    target = set(target)
    strategy = {}
    for v in range(n):
        if inside[v] and owner[v] == player and h.succ[v] and v not in target:
            strategy[v] = tuple(a for a, w in h.succ[v] if inside[w])
    region = frozenset(v for v in range(n) if inside[v])
    return region, Strategy(player, strategy)


def rank_target(h: ProductGame, player: int, k: int) -> list:
    rank = h.rank(player)
    return [v for v in h.sinks if rank[v] <= k]


def swin(h: ProductGame, player: int, k: int) -> frozenset:
    """States from which ``player`` surely ends in a sink of rank at most ``k``."""
    return attractor(h, player, rank_target(h, player, k))[0]


@dataclass
class MaxSureWinning:
    player: int
    k: int
    strategy: Strategy  # permissive: every action some maximal sure winning strategy may take
    region: frozenset


def max_sure_winning(h: ProductGame, player: int) -> MaxSureWinning:
    """Smallest ``k`` whose sure-winning region contains the initial state, and its strategy."""
    for k in range(h.kmax(player) + 1):
        region, strategy = attractor(h, player, rank_target(h, player, k))
        if h.init in region:
            return MaxSureWinning(player, k, strategy, region)
    raise AssertionError("unreachable on a sink-terminating product")


def value_map(h: ProductGame, player: int) -> list:
    """Backward induction: best rank ``player`` can guarantee from each state."""
    rank = h.rank(player)
    val = [0] * h.n_states
    owner = h.owner
    for v in reversed(h.topo):
        out = h.succ[v]
        if not out:
            val[v] = rank[v]
        elif owner[v] == player:
            val[v] = min(val[w] for _, w in out)
        else:
            val[v] = max(val[w] for _, w in out)
    return val


def best_cooperative_rank(h: ProductGame, player: int) -> int:
    rank = h.rank(player)
    return min(rank[v] for v in h.sinks)


def needs_cooperation(h: ProductGame, player: int, k_star: Optional[int] = None) -> bool:
    """Whether the player's guaranteed rank is worse than its best cooperative rank."""
    if k_star is None:
        k_star = max_sure_winning(h, player).k
    return k_star > best_cooperative_rank(h, player)


# ---------------------------------------------------------------------------
# Alignment

def classify_alignment(h: ProductGame, strict_opposite: bool = False) -> Alignment:
    """Compare the two preorders on the automaton states present in the product.

    Completely opposite means ``q >=_1 q'`` implies ``q' >=_2 q``; with
    ``strict_opposite`` the second preorder must be exactly the inverse.
    """
    present = h.automaton_states()
    m1 = h.p1.preorder.restrict(present).matrix
    m2 = h.p2.preorder.restrict(present).matrix
    if np.array_equal(m1, m2):
        return Alignment.FULLY_ALIGNED
    if strict_opposite:
        if np.array_equal(m2, m1.T):
            return Alignment.COMPLETELY_OPPOSITE
    elif not (m1 & ~m2.T).any():
        return Alignment.COMPLETELY_OPPOSITE
    return Alignment.PARTIALLY_ALIGNED


def maximal_sinks(h: ProductGame, player: int, sinks=None) -> list:
    sinks = h.sinks if sinks is None else list(sinks)
    pre = h.automaton(player).preorder
    qs = {h.q(v) for v in sinks}
    strict = pre.strict_matrix()
    top = set()
    for q in qs:
        if not any(strict[pre.index[r], pre.index[q]] for r in qs):
            top.add(q)
    return sorted(v for v in sinks if h.q(v) in top)


def constant_sum_holds(h: ProductGame) -> bool:
    """Rank identity ``rank1 + rank2 = kmax1 = kmax2`` on every materialised state."""
    if h.kmax1 != h.kmax2:
        return False
    return all(r1 + r2 == h.kmax1 for r1, r2 in zip(h.rank1, h.rank2))


# ---------------------------------------------------------------------------
# Restricted game and Pareto states

def restricted_game(h: ProductGame, player: int = 2) -> ProductGame:
    """Limit ``player`` to actions some maximal sure winning strategy of theirs may take.

    An action survives at a reachable state of ``player`` iff its successor's
    guaranteed rank is within the player's optimum from the initial state.
    ``origin`` of the result maps its states back to ``h``.
    """
    val = value_map(h, player)
    k = val[h.init]
    owner = h.owner
    sub = h.subgame(lambda v, a: owner[v] != player or val[h.step(v, a)] <= k)
    return sub


def pareto_states(h: ProductGame) -> list:
    """Reachable sinks that no reachable sink beats in either player's rank."""
    sinks = h.sinks
    best1 = min(h.rank1[v] for v in sinks)
    best2 = min(h.rank2[v] for v in sinks)
    return [v for v in sinks if h.rank1[v] == best1 and h.rank2[v] == best2]


def incentive_to_cooperate(h: ProductGame, k_star=None, pareto=None) -> tuple:
    """Per player: True unless their guaranteed rank beats the Pareto rank."""
    pareto = pareto_states(h) if pareto is None else pareto
    if not pareto:
        raise EmptyParetoError("no Pareto state: mutually beneficial cooperation is impossible")
    if k_star is None:
        k_star = (max_sure_winning(h, 1).k, max_sure_winning(h, 2).k)
    p = pareto[0]
    return (not k_star[0] < h.rank1[p], not k_star[1] < h.rank2[p])


# ---------------------------------------------------------------------------
# Exact equilibrium outcomes

def _allowed_reach(h, blocked):
    """Breadth-first tree of states reachable without touching ``blocked``."""
    if h.init in blocked:
        return {}
    parent = {h.init: None}
    queue = deque([h.init])
    while queue:
        v = queue.popleft()
        for a, w in h.succ[v]:
            if w not in blocked and w not in parent:
                parent[w] = (v, a)
                queue.append(w)
    return parent


def _punishment_regions(h, q):
    """P1's and P2's attractors to the sinks they strictly prefer over automaton state ``q``."""
    regions = []
    for player in (1, 2):
        pre = h.automaton(player).preorder
        better = [v for v in h.sinks if pre.strictly(h.q(v), q)]
        regions.append(attractor(h, player, better)[0] if better else frozenset())
    return regions


def equilibrium_outcomes(h: ProductGame) -> list:
    """Every sink that is the outcome of some pure memoryless Nash profile."""
    outcomes = []
    by_q = {}
    for v in h.sinks:
        by_q.setdefault(h.q(v), []).append(v)
    for q, sinks in by_q.items():
        d1, d2 = _punishment_regions(h, q)
        reach = _allowed_reach(h, d1 | d2)
        outcomes.extend(v for v in sinks if v in reach)
    return sorted(outcomes)


def equilibrium_witness(h: ProductGame, outcome: int) -> tuple:
    """A deterministic Nash profile whose play ends at ``outcome`` (total on decision states)."""
    d1, d2 = _punishment_regions(h, h.q(outcome))
    parent = _allowed_reach(h, d1 | d2)
    if outcome not in parent:
        raise ValueError(f"state {outcome} is not an equilibrium outcome")
    on_path = {}
    v = outcome
    while parent[v] is not None:
        u, a = parent[v]
        on_path[u] = a
        v = u
    profile = ({}, {})
    for v in range(h.n_states):
        out = h.succ[v]
        if not out:
            continue
        player = h.owner[v]
        if v in on_path:
            profile[player - 1][v] = on_path[v]
            continue
        # keep the opponent out of the region where they could force a better outcome
        avoid = d1 if player == 2 else d2
        safe = [a for a, w in out if w not in avoid]
        profile[player - 1][v] = safe[0] if safe else out[0][0]
    return profile


# ---------------------------------------------------------------------------
# Profiles

def _play(h, pi1, pi2):
    path = [h.init]
    v = h.init
    while h.succ[v]:
        strat = pi1 if h.owner[v] == 1 else pi2
        if v not in strat:
            raise InvalidProfileError(f"P{h.owner[v]} strategy has no action at state {h.name(v)}")
        w = h.step(v, strat[v])
        if w is None:
            raise InvalidProfileError(
                f"action {h.action_name(strat[v])!r} is not enabled at state {h.name(v)}")
        v = w
        path.append(v)
    return path


def _reachable_with_fixed(h, fixed_player, strat):
    """States reachable when ``fixed_player`` follows ``strat`` and the other player is free."""
    seen = {h.init}
    queue = deque([h.init])
    while queue:
        v = queue.popleft()
        if h.owner[v] == fixed_player and h.succ[v]:
            if v not in strat:
                raise InvalidProfileError(
                    f"P{fixed_player} strategy has no action at state {h.name(v)}")
            w = h.step(v, strat[v])
            if w is None:
                raise InvalidProfileError(
                    f"action {h.action_name(strat[v])!r} is not enabled at state {h.name(v)}")
            nxt = [w]
        else:
            nxt = [w for _, w in h.succ[v]]
        for w in nxt:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def relevant_part(h: ProductGame, profile) -> tuple:
    """Restrict each strategy to the states where deviations of the other player can lead."""
    out = []
    for player in (1, 2):
        strat = profile[player - 1]
        reach = _reachable_with_fixed(h, player, strat)
        out.append({v: a for v, a in strat.items() if v in reach and h.owner[v] == player})
    return tuple(out)


@dataclass
class Verdict:
    is_nash: bool
    outcome: int
    deviations: dict  # player -> sinks reachable by unilateral deviation and strictly preferred
    in_characterized: Optional[bool]
    explanation: str


def check_nash(h: ProductGame, profile, report: Optional["NashReport"] = None) -> Verdict:
    """Decide whether a deterministic memoryless profile is a Nash equilibrium.

    A player's profitable deviation is a sink they can reach while the other
    player's strategy stays fixed and that they strictly prefer to the outcome.
    """
    pi1, pi2 = profile
    outcome = _play(h, pi1, pi2)[-1]
    deviations = {}
    for player in (1, 2):
        other = opponent(player)
        reach = _reachable_with_fixed(h, other, profile[other - 1])
        deviations[player] = sorted(w for w in reach if not h.succ[w]
                                    and h.strictly(player, w, outcome))
    is_nash = not deviations[1] and not deviations[2]
    in_char = None if report is None else outcome in report.characterized
    parts = []
    if is_nash:
        parts.append(f"Nash: no unilateral deviation reaches an outcome strictly preferred "
                     f"to {h.name(outcome)}")
    for player in (1, 2):
        if deviations[player]:
            w = deviations[player][0]
            parts.append(f"P{player} can deviate to reach {h.name(w)} (rank {h.rank(player)[w]}) "
                         f"strictly preferred to {h.name(outcome)} (rank {h.rank(player)[outcome]})")
    if report is not None and not in_char:
        parts.append(f"{report.case}: {CASE_CLAUSES[report.case]}")
    return Verdict(is_nash, outcome, deviations, in_char, "; ".join(parts))


# ---------------------------------------------------------------------------
# Reports

@dataclass
class NashReport:
    alignment: Alignment
    case: str
    k_star: tuple
    m: tuple
    needs: tuple
    outcomes: list  # exact equilibrium outcomes
    characterized: list  # outcomes singled out by the alignment-specific characterisation
    witness_outcome: int
    witness: tuple  # (P1 map, P2 map) restricted to relevant states
    attitudes: tuple = (AGNOSTIC, AGNOSTIC)
    incentives: Optional[tuple] = None
    pareto: Optional[list] = None
    constant_sum: Optional[bool] = None
    diagnostics: list = field(default_factory=list)

    @property
    def missing_from_characterization(self) -> list:
        return sorted(set(self.outcomes) - set(self.characterized))

    @property
    def not_equilibria(self) -> list:
        return sorted(set(self.characterized) - set(self.outcomes))

    def to_json(self, h: ProductGame) -> dict:
        def state(v):
            return {"id": h.name(v), "rank": [h.rank1[v], h.rank2[v]]}

        return {
            "alignment": self.alignment.value,
            "case": self.case,
            "attitudes": list(self.attitudes),
            "k_star": list(self.k_star),
            "m": list(self.m),
            "needs": list(self.needs),
            "incentives": None if self.incentives is None else list(self.incentives),
            "outcomes": [state(v) for v in self.outcomes],
            "characterized": [state(v) for v in self.characterized],
            "pareto": None if self.pareto is None else [state(v) for v in self.pareto],
            "constant_sum": self.constant_sum,
            "witnesses": [
                {"player": p, "outcome": h.name(self.witness_outcome),
                 "strategy": {h.name(v): h.action_name(a)
                              for v, a in sorted(self.witness[p - 1].items())}}
                for p in (1, 2)],
            "discrepancy": {
                "missing_from_characterization": [h.name(v) for v in self.missing_from_characterization],
                "not_equilibria": [h.name(v) for v in self.not_equilibria]},
            "diagnostics": list(self.diagnostics),
        }

    def summary(self, h: ProductGame) -> str:
        lines = [
            f"alignment: {self.alignment.value}",
            f"case: {self.case}",
            f"attitudes: P1={self.attitudes[0]} P2={self.attitudes[1]}",
            f"guaranteed ranks k*: P1={self.k_star[0]} P2={self.k_star[1]}",
            f"best cooperative ranks m: P1={self.m[0]} P2={self.m[1]}",
            f"needs cooperation: P1={self.needs[0]} P2={self.needs[1]}",
        ]
        if self.incentives is not None:
            lines.append(f"incentive to cooperate: P1={self.incentives[0]} P2={self.incentives[1]}")
        lines.append(f"equilibrium outcomes ({len(self.outcomes)}): "
                     + ", ".join(f"{h.name(v)} {h.rank1[v]}/{h.rank2[v]}" for v in self.outcomes))
        lines.append(f"characterized outcomes ({len(self.characterized)}): "
                     + ", ".join(f"{h.name(v)} {h.rank1[v]}/{h.rank2[v]}" for v in self.characterized))
        if self.missing_from_characterization or self.not_equilibria:
            lines.append(f"discrepancy: {len(self.missing_from_characterization)} equilibrium "
                         f"outcome(s) outside the characterization, {len(self.not_equilibria)} "
                         f"characterized outcome(s) that are not equilibria")
        lines.append(f"witness outcome: {h.name(self.witness_outcome)}")
        lines.extend(f"note: {d}" for d in self.diagnostics)
        return "\n".join(lines) + "\n"

    def to_dot(self, h: ProductGame) -> str:
        marked = {(v, a) for p in (0, 1) for v, a in self.witness[p].items()}
        return h.to_dot(highlight=self.outcomes, marked_edges=marked, name="nash")


class _Analysis:
    def __init__(self, h: ProductGame):
        self.h = h
        self.msw = {p: max_sure_winning(h, p) for p in (1, 2)}
        self.k_star = (self.msw[1].k, self.msw[2].k)
        self.m = (best_cooperative_rank(h, 1), best_cooperative_rank(h, 2))
        self.needs = (self.k_star[0] > self.m[0], self.k_star[1] > self.m[1])
        self.outcomes = equilibrium_outcomes(h)

    def report(self, alignment, case, characterized, attitudes, **extra) -> NashReport:
        h = self.h
        characterized = sorted(set(characterized))
        preferred = [v for v in characterized if v in set(self.outcomes)] or self.outcomes
        chosen = preferred[0]
        witness = relevant_part(h, equilibrium_witness(h, chosen))
        return NashReport(alignment, case, self.k_star, self.m, self.needs, self.outcomes,
                          characterized, chosen, witness, tuple(attitudes), **extra)


def _reach_under(h, permitted):
    """Sinks reachable when ``permitted(v)`` gives the allowed actions at each state."""
    seen = {h.init}
    queue = deque([h.init])
    while queue:
        v = queue.popleft()
        allowed = permitted(v)
        for a, w in h.succ[v]:
            if (allowed is None or a in allowed) and w not in seen:
                seen.add(w)
                queue.append(w)
    return sorted(v for v in seen if not h.succ[v])


def _check_class(h, expected, strict_opposite):
    found = classify_alignment(h, strict_opposite)
    if found != expected:
        raise WrongAlignmentError(f"preferences are {found.value}, expected {expected.value}")
    return found


def nash_aligned(h: ProductGame, analysis=None, attitudes=(AGNOSTIC, AGNOSTIC)) -> NashReport:
    """Equal preferences: the maximal reachable outcomes."""
    alignment = _check_class(h, Alignment.FULLY_ALIGNED, False)
    an = analysis or _Analysis(h)
    return an.report(alignment, CASE_ALIGNED, maximal_sinks(h, 1), attitudes)


def nash_opposite(h: ProductGame, analysis=None, attitudes=(AGNOSTIC, AGNOSTIC),
                  strict_opposite: bool = False) -> NashReport:
    """Opposite preferences: outcomes of both players' maximal sure winning strategies."""
    alignment = _check_class(h, Alignment.COMPLETELY_OPPOSITE, strict_opposite)
    an = analysis or _Analysis(h)
    s1, s2 = an.msw[1].strategy.actions, an.msw[2].strategy.actions

    def permitted(v):
        table = s1 if h.owner[v] == 1 else s2
        return table.get(v, ())

    characterized = _reach_under(h, permitted)
    diagnostics = []
    cs = constant_sum_holds(h)
    if not cs:
        diagnostics.append("rank identity rank1 + rank2 = kmax does not hold on this product")
    if an.k_star[0] + an.k_star[1] != h.kmax2:
        diagnostics.append(f"guaranteed ranks {an.k_star} do not sum to kmax2 = {h.kmax2}")
    return an.report(alignment, CASE_OPPOSITE, characterized, attitudes,
                     constant_sum=cs, diagnostics=diagnostics)


def _helper_case(h, an, needy, helper, attitude):
    sub = restricted_game(h, helper)
    origin = sub.origin
    if attitude == COOPERATIVE:
        sinks = [origin[v] for v in sub.sinks]
        rank = h.rank(needy)
        best = min(rank[v] for v in sinks)
        return CASE_COOPERATIVE_HELPER, [v for v in sinks if rank[v] == best]
    msw = max_sure_winning(sub, needy)
    table = msw.strategy.actions

    def permitted(v):
        return table.get(v, ()) if sub.owner[v] == needy else None

    return CASE_AGNOSTIC_HELPER, [origin[v] for v in _reach_under(sub, permitted)]


def nash_partial(h: ProductGame, attitude1: str = AGNOSTIC, attitude2: str = AGNOSTIC,
                 analysis=None, strict_opposite: bool = False) -> NashReport:
    """Partially aligned preferences, dispatched on who needs cooperation.

    Neither needs: sinks attaining both best cooperative ranks. One needs: the
    other (helper) plays maximal sure winning; a cooperative helper steers to
    the needy player's best outcome among those, an agnostic one leaves the
    needy player to play maximal sure winning in the restricted game. Both
    need: the Pareto states when both have an incentive, otherwise the
    helper analysis with the non-incentivised player as helper.
    """
    for att in (attitude1, attitude2):
        if att not in ATTITUDES:
            raise ValueError(f"attitude must be one of {ATTITUDES}")
    alignment = _check_class(h, Alignment.PARTIALLY_ALIGNED, strict_opposite)
    an = analysis or _Analysis(h)
    attitudes = (attitude1, attitude2)
    needs1, needs2 = an.needs
    diagnostics = []
    if not needs1 and not needs2:
        y = [v for v in h.sinks if h.rank1[v] == an.m[0] and h.rank2[v] == an.m[1]]
        if not y:
            diagnostics.append("neither player needs cooperation but no reachable sink attains "
                               f"both best ranks {an.m}; characterisation is empty")
        return an.report(alignment, CASE_NO_COOPERATION, y, attitudes, diagnostics=diagnostics)
    if needs1 != needs2:
        needy = 1 if needs1 else 2
        helper = opponent(needy)
        case, chars = _helper_case(h, an, needy, helper, attitudes[helper - 1])
        return an.report(alignment, case, chars, attitudes)
    pareto = pareto_states(h)
    incentives = None
    if pareto:
        incentives = incentive_to_cooperate(h, an.k_star, pareto)
        if all(incentives):
            return an.report(alignment, CASE_PARETO, pareto, attitudes,
                             incentives=incentives, pareto=pareto)
        lacking = [p for p in (1, 2) if not incentives[p - 1]]
        helper = lacking[0] if len(lacking) == 1 else 2
        diagnostics.append(f"P{helper} has no incentive to cooperate; treated as helper")
    else:
        helper = 2
        diagnostics.append("Pareto set is empty; P2 treated as helper")
    case, chars = _helper_case(h, an, opponent(helper), helper, attitudes[helper - 1])
    return an.report(alignment, case, chars, attitudes, incentives=incentives,
                     pareto=pareto, diagnostics=diagnostics)


def solve(h: ProductGame, attitudes=(AGNOSTIC, AGNOSTIC), strict_opposite: bool = False) -> NashReport:
    """Classify the alignment and characterise the equilibria accordingly.

    ``outcomes`` always holds the exact equilibrium outcome set (nonempty);
    ``characterized`` holds the alignment-specific characterisation.
    """
    an = _Analysis(h)
    alignment = classify_alignment(h, strict_opposite)
    if alignment is Alignment.FULLY_ALIGNED:
        return nash_aligned(h, an, attitudes)
    if alignment is Alignment.COMPLETELY_OPPOSITE:
        return nash_opposite(h, an, attitudes, strict_opposite)
    return nash_partial(h, attitudes[0], attitudes[1], an, strict_opposite)


def report_to_json_text(report: NashReport, h: ProductGame) -> str:
    return json.dumps(report.to_json(h), sort_keys=True, indent=2)
