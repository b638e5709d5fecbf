import numpy as np
import pytest

from prefnash.errors import AutomatonMismatchError, CapacityError, InvalidProfileError, NonTerminatingError
from prefnash.game import make_game
from prefnash.oracle import profile_outcomes
from prefnash.preference import build_preference_automaton, compare_words, parse_prefspec
from prefnash.preorder import rank_map
from prefnash.product import build_product, product_to_json_text, reachable_sinks, trace_lift
from prefnash.random_instances import random_dag_game
from prefnash.toy import tag_automaton, toy_product

SPEC = "prefltlf 3\nF a\nF b\nF (a & X b)\n> 2 0\n>= 0 1\n"


@pytest.fixture(scope="module")
def pa():
    return build_preference_automaton(parse_prefspec(SPEC), ("a", "b"))


def paths(g, max_len):
    stack = [[g.init]]
    while stack:
        p = stack.pop()
        yield p
        if len(p) < max_len:
            stack.extend(p + [t] for _, t in g.succ[p[-1]])


def word(g, path):
    return [g.label_atoms(s) for s in path]


def test_single_state_product(pa):
    g = make_game(["a", "b"], {"s0": (1, ("a",))}, {}, [], "s0")
    h = build_product(g, pa, pa)
    assert h.n_states == 1 and h.sinks == [0]
    assert h.states[0] == (0, pa.run([{"a"}]))
    assert reachable_sinks(h) == [0]


def test_self_loop_is_reported_with_its_cycle(pa):
    g = make_game(["a", "b"], {"s": (1, ())}, {"stay": 1}, [("s", "stay", "s")], "s")
    with pytest.raises(NonTerminatingError) as info:
        build_product(g, pa, pa)
    assert info.value.cycle == [0, 0]
    assert "s|" in str(info.value)


def test_chain_has_single_reachable_sink(pa):
    g = make_game(["a", "b"], {"s0": (1, ()), "s1": (2, ()), "s2": (1, ("b",))},
                  {"x": 1, "y": 2}, [("s0", "x", "s1"), ("s1", "y", "s2")], "s0")
    h = build_product(g, pa, pa)
    assert reachable_sinks(h) == [2]
    assert trace_lift(h, ["s0"]) == [0]
    assert trace_lift(h, ["s0", "s1", "s2"]) == [0, 1, 2]


def test_trace_lift_rejects_bad_paths(pa):
    g = make_game(["a", "b"], {"s0": (1, ()), "s1": (1, ())}, {"x": 1}, [("s0", "x", "s1")], "s0")
    h = build_product(g, pa, pa)
    for bad in ([], ["s1"], ["s0", "s0"]):
        with pytest.raises(InvalidProfileError):
            trace_lift(h, bad)


def test_branching_sinks_match_profile_outcomes():
    tree = {"r": (1, [("x", "m"), ("y", "o3")]), "m": (2, [("u", "o1"), ("w", "o2")])}
    h = toy_product(tree, {"o1": "p", "o2": "q", "o3": "r"}, [], [])
    assert len(reachable_sinks(h)) == 3
    assert reachable_sinks(h) == profile_outcomes(h)


def test_lift_ignores_game_state():
    tree = {"r": (1, [("x", "a1"), ("y", "m")]), "m": (2, [("u", "a2"), ("w", "b")])}
    h = toy_product(tree, {"a1": "good", "a2": "good", "b": "bad"}, [("good", "bad")], [])
    good = [v for v in h.sinks if h.game.label_atoms(h.states[v][0]) == {"good"}]
    bad = [v for v in h.sinks if v not in good]
    assert len(good) == 2 and h.states[good[0]][0] != h.states[good[1]][0]
    assert h.geq(1, good[0], good[1]) and h.geq(1, good[1], good[0])
    assert all(h.strictly(1, v, bad[0]) for v in good)


def test_rank_maps_come_from_the_restricted_preorder(pa):
    rng = np.random.default_rng(4)
    for _ in range(20):
        g = random_dag_game(rng, 7, ("a", "b"))
        h = build_product(g, pa, pa)
        present = h.automaton_states()
        ranks = rank_map(pa.preorder.restrict(present)).ranks
        assert h.rank1 == [ranks[q] for _, q in h.states]
        full = build_product(g, pa, pa, rank_scope="automaton")
        all_ranks = rank_map(pa.preorder).ranks
        assert full.rank1 == [all_ranks[q] for _, q in full.states]


def test_lift_matches_word_comparison_exhaustively(pa):
    rng = np.random.default_rng(9)
    for _ in range(10):
        g = random_dag_game(rng, 6, ("a", "b"))
        h = build_product(g, pa, pa)
        ps = list(paths(g, 5))
        lifted = [trace_lift(h, p)[-1] for p in ps]
        for i, p in enumerate(ps):
            for j, p2 in enumerate(ps):
                via_words = compare_words(pa, word(g, p), word(g, p2))
                assert via_words == pa.preorder.compare(h.q(lifted[i]), h.q(lifted[j]))


def test_mismatched_semi_automata_are_rejected(pa):
    g = make_game(["a", "b"], {"s0": (1, ())}, {}, [], "s0")
    other = build_preference_automaton(parse_prefspec("prefltlf 1\nG a\n"), ("a", "b"))
    with pytest.raises(AutomatonMismatchError):
        build_product(g, pa, other)


def test_ap_mismatch_and_reordering(pa):
    g = make_game(["c"], {"s0": (1, ())}, {}, [], "s0")
    with pytest.raises(AutomatonMismatchError):
        build_product(g, pa, pa)
    g2 = make_game(["b", "a"], {"s0": (1, ("a",))}, {}, [], "s0")
    assert build_product(g2, pa, pa).states[0][1] == pa.run([{"a"}])


def test_capacity_guard(pa):
    g = random_dag_game(np.random.default_rng(1), 10, ("a", "b"))
    with pytest.raises(CapacityError):
        build_product(g, pa, pa, max_states=1)


def test_exports():
    p = tag_automaton(["x"], [])
    g = make_game(["x"], {"s0": (1, ()), "s1": (1, ("x",))}, {"go": 1}, [("s0", "go", "s1")], "s0")
    h = build_product(g, p, p)
    dot = h.to_dot(highlight=[1], marked_edges=[(0, 0)])
    assert "rank1=" in dot and "gold" in dot and "penwidth" in dot
    assert '"kmax"' in product_to_json_text(h)
