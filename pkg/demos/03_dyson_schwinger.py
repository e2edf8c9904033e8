"""Solve the combinatorial Dyson-Schwinger equations by grafting."""

from ribbonhopf import named
from ribbonhopf.dse import dse_solve, graft, maxf
from ribbonhopf.hopf import VERTEX, GraphPoly

v = GraphPoly.gen(VERTEX)
fish = named.fish_horizontal()

# Grafting a fish into a fish: four insertions, the straight chain is hit
# twice and has two maximal forests.
out = graft(fish, v * GraphPoly.from_graph(fish))
print("B+(v fish) coefficients:", sorted(set(out.terms.values())), "on", len(out), "graphs")
print("maxf(straight chain) =", maxf(named.fish_chain_straight()))
print("maxf(sunrise) =", maxf(named.sunrise()))

rep = dse_solve(3)
for r in rep.rows:
    print(f"c^{r['kind']}_{r['loops']}: {r['count']:4d} graphs, matches enumeration {r['matches_enumeration']}, "
          f"unit coefficients {r['unit_coefficients']}")

# Without the per-place weight, graphs with a tadpole on an internal edge are
# counted once per refinement.
lit = dse_solve(2, per_place=False)
bad = [r for r in lit.rows if not r["unit_coefficients"]]
print("literal refinement sum fails at:", [(r["kind"], r["loops"]) for r in bad])
