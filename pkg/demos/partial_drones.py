"""Partially aligned drones: A wants package 1 delivered first, B wants
package 2 first and then package 1.

Prints who needs the other's cooperation for each start cell of B, then
shows how A's attitude changes B's fortune when B starts at (2, 3), and the
Pareto analysis when B starts at (2, 1).
"""
from prefnash.drone import grid, load_scenario, scenario_product, sweep
from prefnash.solve import AGNOSTIC, COOPERATIVE, solve

scenario = load_scenario("partial.json")
print(scenario.description)
results = sweep(scenario)
print("needs cooperation (A,B) by B's start cell:")
for row in grid(scenario.config, results, "cooperation"):
    print("  " + " ".join(f"{x:>5}" for x in row))

h = scenario_product(scenario, (2, 3))
for attitude in (COOPERATIVE, AGNOSTIC):
    report = solve(h, (attitude, AGNOSTIC))
    ranks = sorted({h.rank2[v] for v in report.characterized})
    print(f"\nB at (2, 3), A {attitude}: case {report.case}, B's ranks {ranks}")

h = scenario_product(scenario, (2, 1))
report = solve(h)
print(f"\nB at (2, 1): case {report.case}, k* = {report.k_star}")
if report.pareto:
    print("Pareto rank pairs:", sorted({(h.rank1[v], h.rank2[v]) for v in report.pareto}))
