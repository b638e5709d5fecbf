"""Drone B wants the reverse of what A wants and is happiest if nothing
gets delivered at all. B can also attack A when they share a cell.

For every start cell of B, prints the best rank A can force on its own.
Cells showing the "nothing delivered" rank are where B can shut A out.
"""
from prefnash.drone import grid, load_scenario, scenario_automata, scenario_product, sweep
from prefnash.preorder import rank_map
from prefnash.solve import classify_alignment

scenario = load_scenario("opposite.json")
print(scenario.description)
pa, _ = scenario_automata(scenario)
nothing = rank_map(pa.preorder).ranks[pa.delta[pa.initial][0]]
results = sweep(scenario)
print(f"rank A can guarantee ('nothing delivered' is rank {nothing}):")
for row in grid(scenario.config, results, "guaranteed_rank_a"):
    print("  " + " ".join(f"{x:>3}" for x in row))
print("cells where B shuts A out:", sorted(c for c, r in results.items() if r.guaranteed[0] == nothing))

# the two orders are reverses on every stated pair, but both drones still
# prefer "packages 2 and 3" to "package 2 only", so the class is partial
print("alignment on the product:", classify_alignment(scenario_product(scenario, (2, 3))).value)
