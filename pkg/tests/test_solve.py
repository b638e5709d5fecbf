import itertools

import pytest

from prefnash import solve as S
from prefnash.errors import EmptyParetoError, InvalidProfileError, WrongAlignmentError
from prefnash.game import make_game
from prefnash.oracle import ProfileEnumeration, brute_force_nash, nash_outcomes, play
from prefnash.preference import PreferenceAutomaton
from prefnash.preorder import Preorder
from prefnash.product import build_product
from prefnash.random_instances import instance_suite
from prefnash.solve import (AGNOSTIC, COOPERATIVE, Alignment, attractor, check_nash,
                            classify_alignment, equilibrium_witness, incentive_to_cooperate,
                            max_sure_winning, nash_aligned, nash_opposite, nash_partial,
                            needs_cooperation, pareto_states, restricted_game, solve, swin,
                            value_map)
from prefnash.toy import sink_named, state_named, strict_chain, toy_product

# P1 picks a branch; P2 then picks the leaf
GATED = {"r": (1, [("x", "m"), ("y", "bad")]), "m": (2, [("u", "good"), ("w", "worse")])}
GATED_LEAVES = {"good": "good", "worse": "worse", "bad": "bad"}

PENNIES = {"v0": (1, [("L", "x"), ("R", "y")]),
           "x": (2, [("l", "xl"), ("r", "xr")]), "y": (2, [("l", "yl"), ("r", "yr")])}
PENNIES_LEAVES = {"xl": "win", "xr": "lose", "yl": "lose", "yr": "win"}

# each player decides one coordinate of the outcome
PHASES = {"r": (1, [("x", "mx"), ("y", "my")]),
          "mx": (2, [("u", "xu"), ("w", "xw")]), "my": (2, [("u", "yu"), ("w", "yw")])}
PHASE_LEAVES = {s: s for s in ("xu", "xw", "yu", "yw")}


@pytest.fixture(scope="module")
def suite():
    return instance_suite(5, per_class=12)


def pennies():
    return toy_product(PENNIES, PENNIES_LEAVES, [("win", "lose")], [("lose", "win")])


def sure_winning_profiles(h, player, target):
    """Strategies of ``player`` whose every play (opponent free) ends in ``target``."""
    enum = ProfileEnumeration(h)
    mine = enum.strategies(player)
    theirs = enum.strategies(3 - player)
    out = []
    for pi in mine:
        prof = (lambda o: (pi, o)) if player == 1 else (lambda o: (o, pi))
        if all(play(h, prof(o))[1] in target for o in theirs):
            out.append(pi)
    return out


def test_attractor_extremes():
    h = pennies()
    assert attractor(h, 1, h.sinks)[0] == frozenset(range(h.n_states))
    region, strategy = attractor(h, 1, [])
    assert region == frozenset() and strategy.actions == {}


def test_attractor_excludes_opponent_choice():
    h = toy_product(GATED, GATED_LEAVES, strict_chain("good", "worse", "bad"), [])
    good = sink_named(h, "good")
    region, _ = attractor(h, 1, [good])
    assert h.init not in region
    assert sure_winning_profiles(h, 1, {good}) == []
    region2, strategy = attractor(h, 2, [good])
    assert h.init not in region2 and state_named(h, "m") in region2
    assert strategy.actions[state_named(h, "m")] == (h.game.action_names.index("u"),)


def test_swin_bounds_and_monotonicity(suite):
    for inst in suite:
        h = inst.product
        for p in (1, 2):
            regions = [swin(h, p, k) for k in range(h.kmax(p) + 1)]
            assert h.init in regions[-1]
            assert all(a <= b for a, b in zip(regions, regions[1:]))


def test_pennies_guaranteed_ranks():
    h = pennies()
    assert classify_alignment(h) is Alignment.COMPLETELY_OPPOSITE
    # the second mover always decides the outcome
    assert max_sure_winning(h, 1).k == 1
    assert max_sure_winning(h, 2).k == 0
    assert value_map(h, 1)[h.init] == 1


def test_value_map_on_chain():
    h = toy_product({"a": (1, [("go", "b")]), "b": (2, [("on", "end")])}, {"end": "e"}, [], [])
    assert set(value_map(h, 1)) == {h.rank1[h.sinks[0]]}


def test_value_map_agrees_with_iterated_sure_winning(suite):
    for inst in suite:
        for p in (1, 2):
            assert value_map(inst.product, p)[0] == max_sure_winning(inst.product, p).k


def test_msw_strategy_guarantees_its_rank(suite):
    for inst in suite[:20]:
        h = inst.product
        for p in (1, 2):
            msw = max_sure_winning(h, p)
            target = {v for v in h.sinks if h.rank(p)[v] <= msw.k}
            assert sure_winning_profiles(h, p, target)


def test_classification():
    same = strict_chain("good", "worse", "bad")
    h = toy_product(GATED, GATED_LEAVES, same, same)
    assert classify_alignment(h) is Alignment.FULLY_ALIGNED
    h = toy_product(GATED, GATED_LEAVES, same, [(y, x) for x, y in same])
    assert classify_alignment(h) is Alignment.COMPLETELY_OPPOSITE
    assert classify_alignment(h, strict_opposite=True) is Alignment.COMPLETELY_OPPOSITE
    # only one direction of the opposite implication
    h = toy_product(GATED, GATED_LEAVES, [("good", "bad")], [("bad", "good"), ("worse", "good")])
    assert classify_alignment(h) is Alignment.COMPLETELY_OPPOSITE
    assert classify_alignment(h, strict_opposite=True) is Alignment.PARTIALLY_ALIGNED
    h = toy_product(GATED, GATED_LEAVES, same, [("good", "bad")])
    assert classify_alignment(h) is Alignment.PARTIALLY_ALIGNED


def test_needs_cooperation():
    h = toy_product(GATED, GATED_LEAVES, strict_chain("good", "worse", "bad"),
                    strict_chain("good", "worse", "bad"))
    assert needs_cooperation(h, 1)
    solo = toy_product({"r": (1, [("x", "a"), ("y", "b")])}, {"a": "a", "b": "b"},
                       [("a", "b")], [])
    assert not needs_cooperation(solo, 1)


def test_aligned_single_and_incomparable_sinks():
    h = toy_product({"r": (1, [("x", "only")])}, {"only": "o"}, [], [])
    report = nash_aligned(h)
    assert report.case == S.CASE_ALIGNED and report.outcomes == report.characterized == h.sinks
    h = toy_product({"r": (1, [("x", "a"), ("y", "b")])}, {"a": "a", "b": "b"}, [], [])
    assert solve(h).outcomes == sorted(h.sinks)


def test_aligned_dominated_sink_is_excluded():
    same = strict_chain("good", "worse", "bad")
    h = toy_product(GATED, GATED_LEAVES, same, same)
    report = solve(h)
    assert report.outcomes == report.characterized == [sink_named(h, "good")]
    assert nash_outcomes(h) == report.outcomes


def test_wrong_alignment_is_rejected():
    h = pennies()
    with pytest.raises(WrongAlignmentError):
        nash_aligned(h)
    with pytest.raises(WrongAlignmentError):
        nash_partial(h)
    same = toy_product(GATED, GATED_LEAVES, [], [])
    with pytest.raises(WrongAlignmentError):
        nash_opposite(same)


def test_opposite_pennies_matches_enumeration():
    h = pennies()
    report = nash_opposite(h)
    assert report.case == S.CASE_OPPOSITE
    assert report.outcomes == report.characterized == nash_outcomes(h)
    assert all(h.rank1[v] == 1 for v in report.outcomes)
    profiles = brute_force_nash(h)
    # P1's branch is irrelevant; P2 must answer with "lose" at both of its states
    assert len(profiles) == 2


def test_opposite_when_one_player_controls_everything():
    tree = {"r": (1, [("x", "a"), ("y", "b"), ("z", "c")])}
    better = strict_chain("a", "b", "c")
    h = toy_product(tree, {s: s for s in "abc"}, better, [(y, x) for x, y in better])
    report = solve(h)
    assert report.outcomes == [sink_named(h, "a")]
    assert report.k_star[0] == min(h.rank1[v] for v in h.sinks)


def opposite_pair(pairs, n_q=4):
    # letters (bitmask over a, b): 0 stays, 1 -> q1, 2 -> q2, 3 -> q3; q1..q3 absorb
    delta = [(0, 1, 2, 3)] + [(q,) * 4 for q in range(1, n_q)]
    e1 = Preorder.from_pairs(range(n_q), pairs)
    return (PreferenceAutomaton.from_parts(("a", "b"), 0, delta, e1),
            PreferenceAutomaton.from_parts(("a", "b"), 0, delta, e1.inverse()))


def test_constant_sum_needs_a_total_exact_inverse():
    g = make_game(["a", "b"], {"r": (1, ()), "m": (2, ()), "sa": (1, ("a",)), "sb": (1, ("b",)),
                               "sab": (1, ("a", "b"))},
                  {"x": 1, "y": 1, "u": 2, "w": 2},
                  [("r", "x", "sa"), ("r", "y", "m"), ("m", "u", "sb"), ("m", "w", "sab")], "r")
    # total: q1 > q0 > q2 ~ q3
    p1, p2 = opposite_pair([(1, 0), (0, 2), (2, 3), (3, 2)])
    h = build_product(g, p1, p2)
    assert S.constant_sum_holds(h)
    assert solve(h).constant_sum is True
    # q3 incomparable to the chain q1 > q0 > q2: rank 0 for both players
    p1, p2 = opposite_pair([(1, 0), (0, 2)])
    h = build_product(g, p1, p2)
    assert classify_alignment(h) == Alignment.COMPLETELY_OPPOSITE
    v = next(v for v in h.sinks if h.q(v) == 3)
    assert (h.rank1[v], h.rank2[v]) == (0, 0)
    assert not S.constant_sum_holds(h)


def test_partial_neither_needs():
    e1 = [("xu", "yu"), ("xu", "yw"), ("xw", "yu"), ("xw", "yw"), ("xu", "xw"), ("xw", "xu")]
    e2 = [("xu", "xw"), ("xu", "yw"), ("yu", "xw"), ("yu", "yw"), ("xu", "yu"), ("yu", "xu")]
    h = toy_product(PHASES, PHASE_LEAVES, e1, e2)
    report = solve(h)
    assert report.alignment is Alignment.PARTIALLY_ALIGNED
    assert report.needs == (False, False)
    assert report.case == S.CASE_NO_COOPERATION
    assert report.characterized == [sink_named(h, "xu")]
    assert report.outcomes == nash_outcomes(h)


def test_partial_one_needy_player_and_attitudes():
    # P1 needs P2 to pick "good"; P2 only minds "extra", which it can always avoid
    tree = {"r": (1, [("x", "m"), ("y", "bad")]),
            "m": (2, [("u", "good"), ("w", "worse"), ("z", "extra")])}
    leaves = {"good": "good", "worse": "worse", "bad": "bad", "extra": "extra"}
    e1 = strict_chain("good", "worse", "bad", "extra")
    flat = ["good", "worse", "bad"]
    e2 = [(a, b) for a in flat for b in flat] + [(a, "extra") for a in flat]
    h = toy_product(tree, leaves, e1, e2)
    coop = solve(h, (AGNOSTIC, COOPERATIVE))
    agn = solve(h, (AGNOSTIC, AGNOSTIC))
    assert coop.alignment is Alignment.PARTIALLY_ALIGNED
    assert coop.needs == (True, False)
    assert coop.case == S.CASE_COOPERATIVE_HELPER
    assert coop.characterized == [sink_named(h, "good")]
    assert agn.case == S.CASE_AGNOSTIC_HELPER
    assert set(agn.characterized) == {sink_named(h, "good"), sink_named(h, "worse")}
    # the threat of "extra" also sustains "bad"
    assert coop.outcomes == agn.outcomes == nash_outcomes(h)
    assert sink_named(h, "bad") in coop.outcomes


def test_restricted_game_removes_degrading_actions():
    tree = {"m": (2, [("u", "good"), ("w", "worse")])}
    h = toy_product(tree, {"good": "good", "worse": "worse"}, [], [("good", "worse")])
    sub = restricted_game(h, 2)
    assert [h.action_name(a) for a, _ in sub.succ[0]] == ["u"]
    assert value_map(sub, 2)[0] == max_sure_winning(h, 2).k
    same = restricted_game(toy_product({"r": (1, [("x", "a"), ("y", "b")])},
                                       {"a": "a", "b": "b"}, [], []), 2)
    assert same.n_states == 3


def test_restricted_game_keeps_exactly_msw_actions(suite):
    for inst in suite:
        h = inst.product
        k = max_sure_winning(h, 2).k
        target = {v for v in h.sinks if h.rank2[v] <= k}
        used = set()
        enum = ProfileEnumeration(h)
        p1_all = enum.strategies(1)
        for pi2 in sure_winning_profiles(h, 2, target):
            for pi1 in p1_all:
                path, _ = play(h, (pi1, pi2))
                used |= {(v, pi2[v]) for v in path if h.owner[v] == 2 and h.succ[v]}
        sub = restricted_game(h, 2)
        kept = {(sub.origin[v], a) for v in range(sub.n_states)
                if sub.owner[v] == 2 for a, _ in sub.succ[v]}
        assert kept == used


def test_pareto_examples():
    single = toy_product({"r": (1, [("x", "a")])}, {"a": "a"}, [], [])
    assert pareto_states(single) == single.sinks
    crossed = toy_product({"r": (1, [("x", "a"), ("y", "b")])}, {"a": "a", "b": "b"},
                          [("a", "b")], [("b", "a")])
    assert pareto_states(crossed) == []
    with pytest.raises(EmptyParetoError):
        incentive_to_cooperate(crossed)
    chain = strict_chain("a", "mid", "c")
    h = toy_product({"r": (1, [("x", "a"), ("y", "c")]), "dummy": (1, [("z", "mid")])},
                    {"a": "a", "c": "c", "mid": "mid"}, chain, chain, rank_scope="automaton")
    assert sorted((h.rank1[v], h.rank2[v]) for v in h.sinks) == [(0, 0), (2, 2)]
    assert pareto_states(h) == [sink_named(h, "a")]


def test_incentives():
    chain = [("top", "p")]
    h = toy_product({"r": (1, [("x", "p")]), "dummy": (1, [("z", "top")])},
                    {"p": "p", "top": "top"}, chain, chain, rank_scope="automaton")
    assert [(h.rank1[v], h.rank2[v]) for v in pareto_states(h)] == [(1, 1)]
    assert incentive_to_cooperate(h, k_star=(2, 2)) == (True, True)
    assert incentive_to_cooperate(h, k_star=(0, 2)) == (False, True)


def test_solve_matches_oracle(suite):
    for inst in suite:
        h = inst.product
        report = solve(h)
        assert report.outcomes, inst.seed
        assert report.outcomes == nash_outcomes(h), inst.seed
        path, last = play(h, report.witness)
        assert last == report.witness_outcome and last in report.outcomes


def test_every_outcome_has_a_verified_witness(suite):
    for inst in suite[:15]:
        h = inst.product
        for v in S.equilibrium_outcomes(h):
            profile = equilibrium_witness(h, v)
            verdict = check_nash(h, profile)
            assert verdict.is_nash and verdict.outcome == v


def test_check_nash_agrees_with_enumeration(suite):
    for inst in suite[:15]:
        h = inst.product
        nash = {tuple(tuple(sorted(p.items())) for p in prof) for prof in brute_force_nash(h)}
        for prof in itertools.islice(ProfileEnumeration(h), 0, None, 7):
            key = tuple(tuple(sorted(p.items())) for p in prof)
            assert check_nash(h, prof).is_nash == (key in nash)


def test_check_nash_explains_dominated_profile():
    same = strict_chain("good", "worse", "bad")
    h = toy_product(GATED, GATED_LEAVES, same, same)
    act = h.game.action_names.index
    profile = ({0: act("y")}, {state_named(h, "m"): act("u")})
    report = solve(h)
    verdict = check_nash(h, profile, report)
    assert not verdict.is_nash
    assert "not a maximal reachable state" in verdict.explanation
    assert "P1 can deviate" in verdict.explanation
    assert check_nash(h, report.witness, report).is_nash


def test_check_nash_rejects_incomplete_profiles():
    h = pennies()
    with pytest.raises(InvalidProfileError):
        check_nash(h, ({}, {}))


def test_report_exports():
    h = pennies()
    report = solve(h)
    doc = report.to_json(h)
    assert {"alignment", "case", "k_star", "m", "needs", "incentives", "outcomes",
            "witnesses", "pareto"} <= set(doc)
    assert doc["alignment"] == "completely_opposite"
    assert "case: opposite-maximal-sure-winning" in report.summary(h)
    assert "digraph nash" in report.to_dot(h)
    assert S.report_to_json_text(report, h) == S.report_to_json_text(solve(h), h)
