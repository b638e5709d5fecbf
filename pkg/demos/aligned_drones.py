"""Two delivery drones that want the same thing: package 1 delivered
together with package 2 or 3, within ten ticks.

Sweeps every start cell of drone B and prints the best rank the pair can
reach (0 is best), then solves the game for B starting at (2, 3) and replays
the equilibrium the solver picked.
"""
from prefnash.drone import grid, load_scenario, scenario_product, sweep
from prefnash.oracle import play
from prefnash.solve import solve

scenario = load_scenario("aligned.json")
print(scenario.description)
results = sweep(scenario)
print("best reachable rank by B's start cell (top row is y = 4):")
for row in grid(scenario.config, results, "max_reachable_rank"):
    print("  " + " ".join(f"{x:>3}" for x in row))
print("cells reaching rank 0:", sorted(c for c, r in results.items() if r.max_reachable_rank == 0))

h = scenario_product(scenario, (2, 3))
report = solve(h)
print(f"\nB starts at (2, 3): {h.n_states} product states, case {report.case}")
path, _ = play(h, report.witness)
print("equilibrium play:")
for v in path:
    print("  ", h.game.names[h.states[v][0]], "rank", h.rank1[v])
