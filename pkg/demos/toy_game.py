"""A five-state game solved three ways: by the characterisation, by brute
force, and by checking one hand-written profile.

P1 either delivers "a" at once or hands the turn to P2, who can deliver "b"
or stop with nothing. Change the two specifications below to see the
alignment class (and the reasoning used) change.
"""
from prefnash.game import make_game
from prefnash.oracle import brute_force_nash, play
from prefnash.preference import build_preference_automaton, parse_prefspec
from prefnash.product import build_product
from prefnash.solve import check_nash, solve

game = make_game(
    ["a", "b"],
    {"s0": (1, ()), "s1": (2, ()), "sa": (1, ("a",)), "sb": (1, ("b",)), "sn": (1, ())},
    {"x": 1, "y": 1, "u": 2, "w": 2},
    [("s0", "x", "sa"), ("s0", "y", "s1"), ("s1", "u", "sb"), ("s1", "w", "sn")],
    "s0")

p1 = build_preference_automaton(parse_prefspec("prefltlf 2\nF a\nF b\n> 0 1\n"), game.ap)
# P2 ranks the alternatives the other way round, and likes "nothing" best
p2 = build_preference_automaton(parse_prefspec("prefltlf 2\nF a\nF b\n> 1 0\n"), game.ap,
                                empty_policy="top")
h = build_product(game, p1, p2)
print(f"product: {h.n_states} states, sinks {[h.name(v) for v in h.sinks]}")

report = solve(h)
print(report.summary(h))

oracle = sorted({play(h, p)[1] for p in brute_force_nash(h)})
print("brute force outcomes:", [h.name(v) for v in oracle])
print("agrees with solve:", oracle == report.outcomes)

# P1 hands over and P2 delivers "b": P1 would rather have taken "a" itself
act = h.game.action_names.index
state = {h.game.names[h.states[v][0]]: v for v in range(h.n_states)}
verdict = check_nash(h, ({state["s0"]: act("y")}, {state["s1"]: act("u")}), report)
print("\nprofile (y, u):", "Nash" if verdict.is_nash else "not Nash")
print(verdict.explanation)
