"""Primitives, insertion, the grafting operator and the combinatorial DSE.

Series live on rooted keys.  ``X^e = 1 - sum c^e_n`` and
``X^v = v + sum c^v_n``; the DSE reads

    c^e_n = sum_{tadpoles T} B+^T( (X^v / X^e)_{n-1} )
    c^v_n = sum_{primitive P, F_P <= n} B+^P( ((X^v)^{F+1} / (X^e)^{2F})_{n-F} )

and the solver checks each ``c_n`` against direct enumeration.
"""

from __future__ import annotations

import itertools
import math
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .enumeration import Filter, ResourceGuardError, enumerate_graphs
from .hopf import (
    VERTEX,
    GraphPoly,
    admissible_subgraphs,
    contract,
    graph_key,
    is_generator,
    key_graph,
    mono_keys,
    mono_loops,
    pi_project,
)
from .named import box_chain, tadpole_down, tadpole_up
from .perm_core import Permutation
from .ribbon import RibbonGraph, canonical_form, residue, serialize

__all__ = [
    "Insertion",
    "GraphSeries",
    "is_primitive",
    "primitive_family",
    "primitives",
    "maxf",
    "insertion_isomorphisms",
    "insert",
    "bivalent_refinements",
    "graft",
    "series_inverse",
    "q_series",
    "x_series",
    "dse_argument",
    "dse_solve",
    "DSEReport",
]

MAX_DSE_ORDER = 5


# ---------------------------------------------------------------- primitives

@lru_cache(maxsize=None)
def _is_primitive_key(key: str) -> bool:
    G = key_graph(key)
    if not is_generator(G):
        return False
    return len(admissible_subgraphs(G)) == 2


def is_primitive(G: RibbonGraph) -> bool:
    """No admissible subgraph besides the trivial one and ``G`` itself."""
    if G.is_empty or len(G.vertices) == 0:
        return False
    if len(G.vertices) == 1 and not G.internal_pairs:
        return False
    return _is_primitive_key(graph_key(G))


def primitive_family(m: int) -> RibbonGraph:
    """The ``m``-th box chain, a primitive 4-point graph with ``3m+1`` loops."""
    return box_chain(m)


@lru_cache(maxsize=None)
def _primitives(n_ext: int, loops: int) -> tuple[str, ...]:
    if n_ext == 2:
        return tuple(sorted({graph_key(tadpole_up()), graph_key(tadpole_down())})) if loops == 1 else ()
    return tuple(k for k in (graph_key(G) for G in enumerate_graphs(n_ext, loops, Filter.ONE_PI))
                 if _is_primitive_key(k))


def primitives(n_ext: int, loops: int) -> list[RibbonGraph]:
    """Rooted primitive graphs with ``n_ext`` legs and the given loop number."""
    return [key_graph(k) for k in _primitives(n_ext, loops)]


@lru_cache(maxsize=None)
def _maxf_key(key: str) -> int:
    G = key_graph(key)
    n = 0
    for H in admissible_subgraphs(G):
        if len(H.pairs) == len(G.internal_pairs):
            continue
        Q = pi_project(contract(G, H))
        if _is_primitive_key(graph_key(Q)):
            n += 1
    return n


def maxf(G: RibbonGraph) -> int:
    """Number of proper admissible ``H`` with ``pi(G/H)`` primitive."""
    return _maxf_key(graph_key(G))


# ---------------------------------------------------------------- insertion

@dataclass(frozen=True)
class _Component:
    key: str
    sigma: dict
    alpha: dict
    legs: tuple  # legs in residue order
    size: int


@lru_cache(maxsize=None)
def _component(key: str) -> _Component:
    G = key_graph(key)
    res = residue(G)
    cyc = res.sigma.cycles()
    if len(cyc) != 1:
        raise ValueError("insertee must have a single-vertex residue")
    return _Component(key, G.sigma.as_dict(), G.alpha.as_dict(), tuple(cyc[0]), len(G.half_edges))


@dataclass(frozen=True)
class Insertion:
    """``iota`` maps each host vertex to (component index, rotation)."""

    host: RibbonGraph
    components: tuple  # component keys
    iota: tuple  # one (vertex index, component index, rotation) per component

    def apply(self) -> RibbonGraph:
        return insert(self.host, self.iota, self.components)


def _host_vertices(host: RibbonGraph) -> list[tuple[int, ...]]:
    # each cycle listed in sigma order from its smallest label
    return host.sigma.cycles()


def insertion_isomorphisms(components, host: RibbonGraph) -> list[Insertion]:
    """All bijections of residue components onto host vertices with rotations.

    Empty if the residue valences do not match the host skeleton.
    """
    comps = tuple(components)
    verts = _host_vertices(host)
    legs = [len(_component(k).legs) for k in comps]
    if sorted(legs) != sorted(len(v) for v in verts):
        return []
    by_val: dict[int, tuple[list, list]] = {}
    for i, v in enumerate(verts):
        by_val.setdefault(len(v), ([], []))[0].append(i)
    for j, n in enumerate(legs):
        by_val[n][1].append(j)
    blocks = []
    for k, (vs, cs) in sorted(by_val.items()):
        opts = []
        for perm in itertools.permutations(cs):
            for rots in itertools.product(range(k), repeat=len(vs)):
                opts.append(tuple(zip(vs, perm, rots)))
        blocks.append(opts)
    out = []
    for combo in itertools.product(*blocks):
        iota = tuple(sorted(x for blk in combo for x in blk))
        out.append(Insertion(host, comps, iota))
    return out


def insertion_count(host: RibbonGraph) -> int:
    """``prod_k V_k! k^V_k`` over the valences of the host vertices."""
    c = Counter(len(v) for v in _host_vertices(host))
    return math.prod(math.factorial(n) * k ** n for k, n in c.items())


def insert(host: RibbonGraph, iota, components) -> RibbonGraph:
    """Insert ``components`` into the vertices of ``host`` along ``iota``.

    ``iota`` lists (host vertex index, component index, rotation) triples;
    leg ``j`` of a component's residue lands on half-edge ``j + rotation``
    of the vertex cycle.  The result is rooted at the image of the host root.
    """
    verts = _host_vertices(host)
    sig: dict[int, int] = {}
    alp: dict[int, int] = {}
    where: dict[int, int] = {}  # host half-edge -> new label
    offset = 0
    for vi, ci, rot in iota:
        comp = _component(components[ci])
        cyc = verts[vi]
        k = len(cyc)
        for a, b in comp.sigma.items():
            sig[a + offset] = b + offset
        for a, b in comp.alpha.items():
            alp[a + offset] = b + offset
        for j, leg in enumerate(comp.legs):
            where[cyc[(j + rot) % k]] = leg + offset
        offset += comp.size
    for h, new in where.items():
        t = host.alpha(h)
        alp[new] = new if t == h else where[t]
    root = host.root_half_edge
    G = RibbonGraph(Permutation(sig), Permutation(alp), where[root] if root is not None else None)
    return canonical_form(G)


# ---------------------------------------------------------------- refinements

def _subdivide(G: RibbonGraph, counts: dict) -> RibbonGraph:
    sig = G.sigma.as_dict()
    alp = G.alpha.as_dict()
    nxt = max(sig) + 1
    for (a, b), m in counts.items():
        prev = a
        for _ in range(m):
            x, y = nxt, nxt + 1
            nxt += 2
            sig[x], sig[y] = y, x
            alp[prev], alp[x] = x, prev
            prev = y
        alp[prev], alp[b] = b, prev
    return canonical_form(RibbonGraph(Permutation(sig), Permutation(alp), G.root_half_edge))


@lru_cache(maxsize=None)
def _refinements_exact(key: str, k: int) -> tuple[str, ...]:
    G = key_graph(key)
    edges = G.internal_pairs
    out = []
    for combo in itertools.combinations_with_replacement(range(len(edges)), k):
        c = Counter(combo)
        out.append(graph_key(_subdivide(G, {edges[i]: m for i, m in c.items()})))
    return tuple(sorted(set(out)))


def bivalent_refinements(gamma: RibbonGraph, budget: int) -> list[RibbonGraph]:
    """Graphs with at most ``budget`` bivalent vertices on internal edges of ``gamma``."""
    key = graph_key(gamma)
    return [key_graph(k) for b in range(budget + 1) for k in _refinements_exact(key, b)]


# ---------------------------------------------------------------- grafting

@lru_cache(maxsize=None)
def _graft_monomial(gamma_key: str, comps: tuple, per_place: bool) -> GraphPoly:
    """``B+^gamma`` of a single monomial given by its sorted component keys."""
    legs = [len(_component(k).legs) for k in comps]
    n_biv = legs.count(2)
    if any(n not in (2, 4) for n in legs):
        return GraphPoly()
    out = GraphPoly()
    hosts = _refinements_exact(gamma_key, n_biv)
    place = Fraction(1, len(hosts)) if per_place else Fraction(1)
    for hkey in hosts:
        host = key_graph(hkey)
        isos = insertion_isomorphisms(comps, host)
        if not isos:
            continue
        w = place / insertion_count(host)
        tally = Counter(graph_key(i.apply()) for i in isos)
        for gk, mult in tally.items():
            out.add_term(((gk, 1),), w * mult / _maxf_key(gk))
    return out


def graft(gamma: RibbonGraph | str, arg: GraphPoly, max_loops: int | None = None,
          per_place: bool = True) -> GraphPoly:
    """Grafting operator ``B+^gamma`` applied to ``arg`` (linear).

    Each monomial is inserted into every bivalent refinement of ``gamma``
    whose vertices match the residues of its factors, with weight
    ``1/|I|`` per isomorphism and ``1/maxf`` per resulting graph.
    Monomials with mismatching residues contribute zero.

    With ``per_place`` (the default) a monomial with ``k`` propagator
    factors is also divided by the number of refinements carrying ``k``
    bivalent vertices, i.e. by the number of ways to place them on the
    internal edges.  ``per_place=False`` sums the refinements unweighted;
    the DSE then over-counts propagator insertions on hosts with more than
    one internal edge.
    """
    gk = gamma if isinstance(gamma, str) else graph_key(gamma)
    gl = key_graph(gk).loops
    out = GraphPoly()
    for m, c in arg.items():
        if max_loops is not None and gl + mono_loops(m) > max_loops:
            continue
        comps = tuple(sorted(mono_keys(m)))
        out = out + _graft_monomial(gk, comps, per_place) * c
    return out


# ---------------------------------------------------------------- series

class GraphSeries:
    """Loop-graded truncated series of :class:`GraphPoly` values."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = [t if isinstance(t, GraphPoly) else GraphPoly({(): t}) for t in terms]

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    @classmethod
    def constant(cls, x, order: int) -> "GraphSeries":
        x = x if isinstance(x, GraphPoly) else GraphPoly({(): x})
        return cls([x] + [GraphPoly() for _ in range(order)])

    def __getitem__(self, n: int) -> GraphPoly:
        return self.terms[n] if 0 <= n < len(self.terms) else GraphPoly()

    def __add__(self, other: "GraphSeries") -> "GraphSeries":
        n = min(self.order, other.order)
        return GraphSeries([self[i] + other[i] for i in range(n + 1)])

    def __neg__(self) -> "GraphSeries":
        return GraphSeries([-t for t in self.terms])

    def __sub__(self, other: "GraphSeries") -> "GraphSeries":
        return self + (-other)

    def __mul__(self, other) -> "GraphSeries":
        if not isinstance(other, GraphSeries):
            return GraphSeries([t * other for t in self.terms])
        n = min(self.order, other.order)
        out = [GraphPoly() for _ in range(n + 1)]
        for i in range(n + 1):
            if self[i].is_zero():
                continue
            for j in range(n + 1 - i):
                if not other[j].is_zero():
                    out[i + j] = out[i + j] + self[i] * other[j]
        return GraphSeries(out)

    def __pow__(self, e: int) -> "GraphSeries":
        if e < 0:
            return series_inverse(self) ** (-e)
        out = GraphSeries.constant(1, self.order)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, GraphSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(self[i] == other[i] for i in range(n + 1))

    def __repr__(self) -> str:
        return "GraphSeries(" + ", ".join(repr(t) for t in self.terms) + ")"


def series_inverse(x: GraphSeries) -> GraphSeries:
    """Geometric inverse of a series with leading term 1."""
    if x[0] != GraphPoly.one():
        raise ValueError("series_inverse needs leading term 1")
    y = GraphSeries.constant(1, x.order) - x
    out = GraphSeries.constant(1, x.order)
    power = GraphSeries.constant(1, x.order)
    for _ in range(x.order):
        power = power * y
        out = out + power
    return out


def x_series(kind: str, coeffs: dict, order: int) -> GraphSeries:
    """``X^e = 1 - sum c^e_n`` or ``X^v = v + sum c^v_n`` from ``coeffs[n]``."""
    if kind == "e":
        return GraphSeries([GraphPoly.one()] + [-coeffs.get(n, GraphPoly()) for n in range(1, order + 1)])
    if kind == "v":
        return GraphSeries([GraphPoly.gen(VERTEX)] + [coeffs.get(n, GraphPoly()) for n in range(1, order + 1)])
    raise ValueError(kind)


def q_series(ce: dict, cv: dict, order: int) -> GraphSeries:
    """``Q = X^v / (X^e)^2``."""
    return x_series("v", cv, order) * series_inverse(x_series("e", ce, order)) ** 2


def dse_argument(kind: str, loops: int, ce: dict, cv: dict, order: int) -> GraphSeries:
    """Argument of ``B+^gamma`` for a primitive with ``loops`` loops."""
    xe_inv = series_inverse(x_series("e", ce, order))
    xv = x_series("v", cv, order)
    if kind == "e":
        return xv * xe_inv
    return xv ** (loops + 1) * xe_inv ** (2 * loops)


# ---------------------------------------------------------------- solver

@dataclass
class DSEReport:
    order: int
    per_place: bool = True
    ce: dict = field(default_factory=dict)
    cv: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r["verdict"] for r in self.rows)

    def to_json(self, with_graphs: bool = True, with_timing: bool = False) -> dict:
        rows = []
        for r in self.rows:
            r = dict(r)
            if not with_graphs:
                r.pop("graphs", None)
            if not with_timing:
                r.pop("seconds", None)
            rows.append(r)
        return {"check": "dse_solve", "params": {"order": self.order, "per_place": self.per_place},
                "verdict": "PASS" if self.passed else "FAIL", "rows": rows}


def _row(kind: str, n: int, poly: GraphPoly, n_ext: int, seconds: float) -> dict:
    coeffs = [c for c in poly.terms.values()]
    graphs = sorted(k for m in poly.terms for k, _ in m)
    expected = {graph_key(G) for G in enumerate_graphs(n_ext, n, Filter.ONE_PI)}
    unit = all(c == 1 for c in coeffs) and all(len(m) == 1 and m[0][1] == 1 for m in poly.terms)
    same = set(graphs) == expected
    return {"kind": kind, "loops": n, "count": len(graphs), "expected": len(expected),
            "unit_coefficients": unit, "matches_enumeration": same, "verdict": unit and same,
            "seconds": round(seconds, 3), "graphs": graphs}


def dse_solve(order: int, order_v: int | None = None, per_place: bool = True) -> DSEReport:
    """Solve the DSE order by order and compare with enumeration.

    ``order`` bounds the 2-point series, ``order_v`` (default ``order``) the
    4-point series.  ``per_place`` is passed to :func:`graft`.
    """
    order_v = order if order_v is None else order_v
    if max(order, order_v) > MAX_DSE_ORDER:
        raise ResourceGuardError(f"DSE order above {MAX_DSE_ORDER}")
    rep = DSEReport(order, per_place=per_place)
    ce: dict[int, GraphPoly] = {}
    cv: dict[int, GraphPoly] = {}
    for n in range(1, max(order, order_v) + 1):
        if n <= order:
            t0 = time.perf_counter()
            arg = dse_argument("e", 1, ce, cv, n - 1)
            poly = GraphPoly()
            for pk in _primitives(2, 1):
                poly = poly + graft(pk, arg[n - 1], per_place=per_place)
            ce[n] = poly
            rep.rows.append(_row("e", n, poly, 2, time.perf_counter() - t0))
        if n <= order_v:
            t0 = time.perf_counter()
            poly = GraphPoly()
            for f in range(1, n + 1):
                for pk in _primitives(4, f):
                    arg = dse_argument("v", f, ce, cv, n - f)
                    poly = poly + graft(pk, arg[n - f], per_place=per_place)
            cv[n] = poly
            rep.rows.append(_row("v", n, poly, 4, time.perf_counter() - t0))
    rep.ce, rep.cv = ce, cv
    return rep
