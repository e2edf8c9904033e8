"""Enumerate planar quartic ribbon graphs and compare with the counting series."""

from ribbonhopf import named
from ribbonhopf.enumeration import Filter, counting_series, enumerate_graphs
from ribbonhopf.ribbon import serialize, topology

# The two one-loop propagator corrections are the tadpoles with the loop on
# either side of the line.
for G in enumerate_graphs(2, 1, Filter.ONE_PI):
    print(serialize(G))

print()
print("order  G2  G4  PI2  PI4   (enumerated / series)")
series = {k: counting_series(k, 4) for k in ("G2", "G4", "PI2", "PI4")}
for m in range(5):
    row = []
    for kind, n_ext, filt in (("G2", 2, Filter.CONNECTED), ("G4", 4, Filter.CONNECTED),
                              ("PI2", 2, Filter.ONE_PI), ("PI4", 4, Filter.ONE_PI)):
        loops = m if n_ext == 2 else m - 1
        got = len(enumerate_graphs(n_ext, loops, filt)) if loops >= 0 else 0
        if kind == "PI2" and m == 0:
            got = 0
        row.append(f"{got}/{series[kind].count(m)}")
    print(f"{m:5d}  " + "  ".join(row))

# topology of a named example
t = topology(named.genus_one_example())
print()
print("genus-one example:", t, "euler", t.euler)
