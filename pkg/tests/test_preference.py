import itertools

import numpy as np
import pytest

from prefnash.errors import InconsistentPreferenceError, PrefSpecError
from prefnash.preference import (BOTTOM, PreferenceAutomaton, build_preference_automaton,
                                 close_constraints, compare_words, parse_prefspec,
                                 preference_graph)
from prefnash.preorder import Comparison, rank_map
from prefnash.drone import DATA

ALIGNED = (DATA / "aligned.prefltlf").read_text()
AP = ("d1", "d2", "d3")


@pytest.fixture(scope="module")
def aligned():
    return build_preference_automaton(parse_prefspec(ALIGNED), AP)


def test_parse_counts_and_comments():
    spec = parse_prefspec(ALIGNED)
    assert len(spec.alternatives) == 4
    assert spec.constraints == ((">", 3, 0), (">", 3, 1), (">", 3, 2))
    assert spec.atoms() == ["d1", "d2", "d3"]


def test_to_text_round_trip():
    spec = parse_prefspec(ALIGNED)
    assert parse_prefspec(spec.to_text()) == spec


@pytest.mark.parametrize("text", [
    "",
    "prefltlf x\nF a",
    "prefltlf 2\nF a",
    "prefltlf 1\nF a\n> 0 1",
    "prefltlf 1\nF a\n>> 0 0",
    "prefltlf 1\nF (a",
])
def test_malformed_specs(text):
    with pytest.raises(PrefSpecError):
        parse_prefspec(text)


def test_inconsistent_constraints_name_the_culprit():
    spec = parse_prefspec("prefltlf 2\nF a\nF b\n> 0 1\n>= 1 0\n")
    with pytest.raises(InconsistentPreferenceError) as info:
        close_constraints(spec)
    assert info.value.constraint == "> 0 1"


def test_incomparability_constraint_violated_by_closure():
    spec = parse_prefspec("prefltlf 3\nF a\nF b\nF c\n> 0 1\n> 1 2\n<> 0 2\n")
    with pytest.raises(InconsistentPreferenceError):
        close_constraints(spec)


@pytest.mark.parametrize("policy, above, below", [
    ("bottom", 0, BOTTOM), ("top", BOTTOM, 0)])
def test_empty_policy_placement(policy, above, below):
    closed = close_constraints(parse_prefspec("prefltlf 1\nF a\n"), policy)
    assert closed.strictly(above, below)


def test_empty_policy_incomparable():
    closed = close_constraints(parse_prefspec("prefltlf 1\nF a\n"), "incomparable")
    assert closed.incomparable(0, BOTTOM)


def test_worked_example_word_comparison(aligned):
    deliver_2_then_1 = [set(), {"d2"}, {"d1", "d2"}]
    deliver_3_then_2 = [set(), {"d3"}, {"d2", "d3"}]
    assert compare_words(aligned, deliver_2_then_1, deliver_3_then_2) is Comparison.STRICTLY_PREFERRED
    assert compare_words(aligned, deliver_3_then_2, deliver_2_then_1) is Comparison.STRICTLY_DISPREFERRED


def test_worked_example_ranks(aligned):
    ranks = rank_map(aligned.preorder).ranks
    by_sat = {frozenset(aligned.sat[q]): ranks[q] for q in range(aligned.n_states)}
    assert by_sat[frozenset({0, 1, 3})] == 0
    assert by_sat[frozenset({0})] == 1
    assert by_sat[frozenset({1, 2})] == 1
    assert by_sat[frozenset({1})] == 2
    assert by_sat[frozenset()] == 3


def test_word_comparison_follows_satisfied_alternatives(aligned):
    letters = [frozenset(c) for r in range(4) for c in itertools.combinations(AP, r)]
    closed = aligned.alternative_order
    for w in itertools.product(letters, repeat=2):
        for w2 in itertools.product(letters, repeat=2):
            sat = [{i for i, f in enumerate(aligned.alternatives) if _holds(f, x)} for x in (w, w2)]
            tops = [_max(s, closed) for s in sat]
            expected = all(any(closed.geq(i, j) for i in tops[0]) for j in tops[1])
            assert aligned.preorder.geq(aligned.run(w), aligned.run(w2)) == expected


def _holds(f, word):
    from prefnash.ltlf import holds
    return holds(f, word)


def _max(s, closed):
    from prefnash.preorder import maximal
    return maximal(s, closed) if s else [BOTTOM]


def test_semi_automaton_independent_of_constraints(aligned):
    other = build_preference_automaton(
        parse_prefspec(ALIGNED.replace("> 3 0", "> 0 3")), AP)
    assert other.semi_automaton() == aligned.semi_automaton()
    assert other.preorder != aligned.preorder


def test_json_round_trip(aligned):
    back = PreferenceAutomaton.from_json(aligned.to_json())
    assert back.semi_automaton() == aligned.semi_automaton()
    assert back.preorder == aligned.preorder


def test_empty_constraints_leave_distinct_goals_incomparable():
    p = build_preference_automaton(parse_prefspec("prefltlf 2\nF a\nF b\n"), ("a", "b"),
                                   empty_policy="incomparable")
    only_a, only_b, none = p.run([{"a"}]), p.run([{"b"}]), p.run([set()])
    assert p.preorder.incomparable(only_a, only_b)
    assert p.preorder.incomparable(only_a, none)
    # satisfying both goals weakly beats satisfying one of them under the max-set rule
    assert p.preorder.strictly(p.run([{"a", "b"}]), only_a)


def test_antichain_preorder_gives_edgeless_graph():
    from prefnash.preorder import Preorder
    p = PreferenceAutomaton.from_parts(("a",), 0, [(1, 2), (1, 1), (2, 2)],
                                       Preorder(range(3), np.eye(3, dtype=bool)))
    g = preference_graph(p)
    assert g.edges == [] and len(g.nodes) == 3


def test_preference_graph_edges_point_to_better_nodes(aligned):
    g = preference_graph(aligned)
    for x, y in g.edges:
        assert aligned.preorder.strictly(g.nodes[y][0], g.nodes[x][0])
    assert "digraph" in g.to_dot()
