"""Coproduct and antipode on small ribbon graphs."""

from ribbonhopf import named
from ribbonhopf.hopf import VERTEX, GraphPoly, TensorPoly, antipode, coproduct, reduced_coproduct, unroot
from ribbonhopf.subalgebra import c_values, p_poly, verify_cn_coproduct

v = GraphPoly.gen(VERTEX)
fish = GraphPoly.from_graph(named.fish_horizontal())

# A primitive 4-point graph: both legs of the coproduct carry vertex residues.
print("Delta(fish) == fish (x) v + v^2 (x) fish:",
      coproduct(fish) == TensorPoly.simple(fish, v) + TensorPoly.simple(v * v, fish))

# The vertex is grouplike, so the antipode needs its inverse.
print("S(fish) == -v^-3 fish:", antipode(fish) == -(v ** -3) * fish)

sunrise = GraphPoly.from_graph(named.sunrise())
# two overlapping fish subgraphs, each leaving a tadpole
print("reduced coproduct of the sunrise:")
for (left, right), c in sorted(reduced_coproduct(sunrise).items()):
    fmt = lambda m: " ".join(k if e == 1 else f"[{k}]^{e}" for k, e in m)
    print(f"  {c} * [{fmt(left)}] (x) [{fmt(right)}]")

# The sums c_n of all 1PI graphs span a sub-Hopf algebra.
red = reduced_coproduct(c_values("e", 2), rooted_right=True)
expected = TensorPoly.simple(unroot(c_values("v", 1)) + v * unroot(c_values("e", 1)), c_values("e", 1))
print("reduced coproduct of c^e_2 == (c^v_1 + c^v_0 c^e_1) (x) c^e_1:", red == expected)
print("P^v_4,1 =", p_poly("v", 4, 1))
for kind, n in (("e", 3), ("v", 3)):
    print(f"Delta(c^{kind}_{n}) matches the polynomial formula:", verify_cn_coproduct(kind, n))
