"""Connes-Kreimer Hopf algebra of planar one-boundary quartic ribbon graphs.

Generators are connected bridgeless planar graphs with one boundary of 2 or
4 legs, keyed by the serialization of their canonical form.  The bare
vertex ``v`` (``c^v_0``) is a grouplike generator; the bare edge is the
unit.  Since ``S(v) = v^-1`` monomials may carry negative powers of ``v``.

Two flavours of keys are used.  Unrooted keys (isomorphism classes) are the
Hopf-algebra generators.  Rooted keys label graphs with a marked root leg,
which is what the perturbative series ``c_n`` sum over.  :func:`coaction`
maps a rooted element to ``sum_H [H] (x) pi(G/H)`` with unrooted left legs
and rooted right legs, the right leg keeping the root of ``G``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .perm_core import Permutation
from .ribbon import (
    RibbonGraph,
    MultiTraceGraph,
    boundaries,
    canonical_form,
    contract_pairs,
    empty_graph,
    is_bridgeless,
    is_connected,
    parse,
    serialize,
    topology,
    vertex_graph,
)

__all__ = [
    "Monomial",
    "GraphPoly",
    "TensorPoly",
    "SubgraphSpec",
    "VERTEX",
    "graph_key",
    "key_graph",
    "key_loops",
    "unrooted_key",
    "mono",
    "mono_mul",
    "mono_loops",
    "is_generator",
    "admissible_subgraphs",
    "subgraph_components",
    "contract",
    "pi_project",
    "coproduct",
    "coaction",
    "reduced_coproduct",
    "counit",
    "antipode",
    "unroot",
    "convolution_check",
]

Monomial = tuple  # sorted tuple of (key, exponent)

VERTEX = serialize(vertex_graph())


# ---------------------------------------------------------------- keys

def graph_key(G: RibbonGraph, rooted: bool = True) -> str | None:
    """Key of a connected graph; ``None`` for the empty graph (the unit)."""
    if G.is_empty:
        return None
    return serialize(canonical_form(G, rooted))


@lru_cache(maxsize=None)
def key_graph(key: str) -> RibbonGraph:
    return parse(key)


@lru_cache(maxsize=None)
def key_loops(key: str) -> int:
    return key_graph(key).loops


@lru_cache(maxsize=None)
def unrooted_key(key: str) -> str:
    return serialize(canonical_form(key_graph(key), rooted=False))


def mono(*keys: str | None) -> Monomial:
    out: dict[str, int] = {}
    for k in keys:
        if k is not None:
            out[k] = out.get(k, 0) + 1
    return tuple(sorted(out.items()))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for k, e in b:
        out[k] = out.get(k, 0) + e
    return tuple(sorted((k, e) for k, e in out.items() if e))


def mono_pow(a: Monomial, e: int) -> Monomial:
    return tuple((k, x * e) for k, x in a) if e else ()


def mono_loops(a: Monomial) -> int:
    return sum(key_loops(k) * e for k, e in a)


def mono_keys(a: Monomial) -> list[str]:
    out = []
    for k, e in a:
        if e < 0:
            raise ValueError("negative exponent")
        out.extend([k] * e)
    return out


def _fmt_mono(a: Monomial) -> str:
    if not a:
        return "1"
    return " * ".join(f"[{k}]" + (f"^{e}" if e != 1 else "") for k, e in a)


# ---------------------------------------------------------------- polynomials

class GraphPoly:
    """Finite rational combination of monomials in graph keys."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                self.add_term(tuple(sorted(m)), Fraction(c))

    @classmethod
    def one(cls) -> "GraphPoly":
        return cls({(): 1})

    @classmethod
    def zero(cls) -> "GraphPoly":
        return cls()

    @classmethod
    def gen(cls, key: str | None, coeff=1) -> "GraphPoly":
        return cls({mono(key): coeff})

    @classmethod
    def from_graph(cls, G: RibbonGraph, rooted: bool = True, coeff=1) -> "GraphPoly":
        return cls.gen(graph_key(G, rooted), coeff)

    @classmethod
    def from_graphs(cls, graphs: Iterable[RibbonGraph], rooted: bool = True) -> "GraphPoly":
        out: dict[Monomial, Fraction] = {}
        for G in graphs:
            m = mono(graph_key(G, rooted))
            out[m] = out.get(m, 0) + 1
        return cls(out)

    def copy(self) -> "GraphPoly":
        p = GraphPoly()
        p.terms = dict(self.terms)
        return p

    def items(self):
        return self.terms.items()

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def add_term(self, m: Monomial, c):
        c = self.terms.get(m, 0) + c
        if c:
            self.terms[m] = Fraction(c)
        else:
            self.terms.pop(m, None)

    def __add__(self, other) -> "GraphPoly":
        if not isinstance(other, GraphPoly):
            other = GraphPoly({(): other})
        p = self.copy()
        for m, c in other.terms.items():
            p.add_term(m, c)
        return p

    __radd__ = __add__

    def __neg__(self) -> "GraphPoly":
        return GraphPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "GraphPoly":
        if not isinstance(other, GraphPoly):
            other = GraphPoly({(): other})
        return self + (-other)

    def __rsub__(self, other) -> "GraphPoly":
        return (-self) + other

    def __mul__(self, other) -> "GraphPoly":
        if not isinstance(other, GraphPoly):
            other = Fraction(other)
            return GraphPoly({m: c * other for m, c in self.terms.items()})
        p = GraphPoly()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                p.add_term(mono_mul(m1, m2), c1 * c2)
        return p

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "GraphPoly":
        if e < 0:
            if len(self.terms) == 1:
                (m, c), = self.terms.items()
                return GraphPoly({mono_pow(m, e): Fraction(1) / c ** (-e)})
            raise ValueError("negative powers only for monomials")
        out = GraphPoly.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, GraphPoly):
            if other == 0:
                return not self.terms
            return NotImplemented
        return self.terms == other.terms

    def homogeneous(self, k: int) -> "GraphPoly":
        return GraphPoly({m: c for m, c in self.terms.items() if mono_loops(m) == k})

    def truncate(self, n: int) -> "GraphPoly":
        return GraphPoly({m: c for m, c in self.terms.items() if mono_loops(m) <= n})

    def map_keys(self, f: Callable[[str], str | None]) -> "GraphPoly":
        """Apply a key map generator-wise (an algebra morphism)."""
        p = GraphPoly()
        for m, c in self.terms.items():
            out: Monomial = ()
            for k, e in m:
                out = mono_mul(out, mono_pow(mono(f(k)), e) if f(k) is not None else ())
            p.add_term(out, c)
        return p

    def substitute(self, f: Callable[[str], "GraphPoly"]) -> "GraphPoly":
        """Algebra morphism sending each generator key to ``f(key)``."""
        p = GraphPoly()
        for m, c in self.terms.items():
            t = GraphPoly({(): c})
            for k, e in m:
                t = t * (f(k) ** e)
            p = p + t
        return p

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda mc: (mono_loops(mc[0]), mc[0]))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c} {_fmt_mono(m)}" for m, c in self.sorted_items())

    def to_json(self) -> list:
        return [{"monomial": mono_keys(m) if all(e > 0 for _, e in m) else [[k, e] for k, e in m],
                 "coeff": str(c)} for m, c in self.sorted_items()]


class TensorPoly:
    """Rational combination of pairs ``left (x) right`` of monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        self.terms: dict[tuple, Fraction] = {}
        if terms:
            for k, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[k] = c

    @classmethod
    def simple(cls, a: GraphPoly, b: GraphPoly) -> "TensorPoly":
        t = cls()
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                t.add_term((m1, m2), c1 * c2)
        return t

    def add_term(self, k: tuple, c):
        c = self.terms.get(k, 0) + c
        if c:
            self.terms[k] = Fraction(c)
        else:
            self.terms.pop(k, None)

    def copy(self) -> "TensorPoly":
        t = TensorPoly()
        t.terms = dict(self.terms)
        return t

    def items(self):
        return self.terms.items()

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "TensorPoly") -> "TensorPoly":
        t = self.copy()
        for k, c in other.terms.items():
            t.add_term(k, c)
        return t

    def __neg__(self) -> "TensorPoly":
        return TensorPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TensorPoly") -> "TensorPoly":
        return self + (-other)

    def __mul__(self, other) -> "TensorPoly":
        if not isinstance(other, TensorPoly):
            other = Fraction(other)
            return TensorPoly({k: c * other for k, c in self.terms.items()})
        t = TensorPoly()
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                t.add_term((mono_mul(a1, a2), mono_mul(b1, b2)), c1 * c2)
        return t

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return self.terms == other.terms

    def map_left(self, f: Callable[[GraphPoly], GraphPoly]) -> "TensorPoly":
        t = TensorPoly()
        for (a, b), c in self.terms.items():
            for m, d in f(GraphPoly({a: 1})).terms.items():
                t.add_term((m, b), c * d)
        return t

    def map_right(self, f: Callable[[GraphPoly], GraphPoly]) -> "TensorPoly":
        t = TensorPoly()
        for (a, b), c in self.terms.items():
            for m, d in f(GraphPoly({b: 1})).terms.items():
                t.add_term((a, m), c * d)
        return t

    def multiply(self) -> GraphPoly:
        p = GraphPoly()
        for (a, b), c in self.terms.items():
            p.add_term(mono_mul(a, b), c)
        return p

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kc: (mono_loops(kc[0][0]), kc[0]))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c} {_fmt_mono(a)} (x) {_fmt_mono(b)}" for (a, b), c in self.sorted_items())

    def to_json(self) -> list:
        return [{"left": mono_keys(a), "right": mono_keys(b), "coeff": str(c)}
                for (a, b), c in self.sorted_items()]


# ---------------------------------------------------------------- subgraphs

def is_generator(G: RibbonGraph) -> bool:
    """Connected, bridgeless, planar, one boundary of 2 or 4 legs."""
    if G.is_empty or isinstance(G, MultiTraceGraph) or not is_connected(G):
        return False
    t = topology(G)
    return t.genus == 0 and t.boundaries == 1 and t.boundary_lengths[0] in (2, 4) and is_bridgeless(G)


@dataclass(frozen=True)
class SubgraphSpec:
    """A spanning subgraph given by the internal pairs it keeps.

    ``components`` lists the pair sets of its non-trivial components.
    """

    pairs: frozenset
    components: tuple = ()

    @property
    def is_trivial(self) -> bool:
        return not self.pairs


def _component_graph(G: RibbonGraph, labels: Iterable[int], pairs) -> RibbonGraph:
    labels = list(labels)
    am = {h: h for h in labels}
    for a, b in pairs:
        am[a], am[b] = b, a
    return RibbonGraph(Permutation({h: G.sigma(h) for h in labels}), Permutation(am))


def _is_admissible_component(C: RibbonGraph) -> bool:
    if not C.internal_pairs or not is_connected(C):
        return False
    t = topology(C)
    return (t.genus == 0 and t.boundaries == 1 and t.boundary_lengths[0] in (2, 4)
            and is_bridgeless(C))


@lru_cache(maxsize=4096)
def _candidates(G: RibbonGraph) -> tuple:
    """Admissible connected subgraphs as (vertex mask, pair set)."""
    verts = G.vertices
    nv = len(verts)
    vid = {h: i for i, c in enumerate(verts) for h in c}
    pairs = G.internal_pairs
    out = []
    for mask in range(1, 1 << nv):
        inside = [i for i in range(nv) if mask >> i & 1]
        labels = [h for i in inside for h in verts[i]]
        induced = [p for p in pairs if mask >> vid[p[0]] & 1 and mask >> vid[p[1]] & 1]
        c = len(labels) - 2 * len(induced)
        if c not in (2, 4) or not induced:
            continue
        choices = [induced]
        if c == 2:
            choices += [[q for q in induced if q != p] for p in induced]
        for chosen in choices:
            if not chosen:
                continue
            C = _component_graph(G, labels, chosen)
            if _is_admissible_component(C):
                out.append((mask, frozenset(chosen)))
    return tuple(out)


@lru_cache(maxsize=4096)
def admissible_subgraphs(G: RibbonGraph) -> tuple[SubgraphSpec, ...]:
    """All spanning subgraphs whose non-trivial components are admissible.

    Includes the trivial subgraph (no edges) and ``G`` itself.
    """
    cands = sorted(_candidates(G), key=lambda mc: (mc[0], sorted(mc[1])))
    out = []

    def rec(i, used, chosen):
        if i == len(cands):
            pairs = frozenset(p for _, ps in chosen for p in ps)
            comps = tuple(sorted((tuple(sorted(ps)) for _, ps in chosen)))
            out.append(SubgraphSpec(pairs, comps))
            return
        rec(i + 1, used, chosen)
        mask, ps = cands[i]
        if not used & mask:
            rec(i + 1, used | mask, chosen + [(mask, ps)])

    rec(0, 0, [])
    out.sort(key=lambda s: (len(s.pairs), sorted(s.pairs)))
    return tuple(out)


def subgraph_components(G: RibbonGraph, H: SubgraphSpec) -> list[RibbonGraph]:
    """Connected components of ``H`` (trivial ones are bare vertices)."""
    verts = G.vertices
    vid = {h: i for i, c in enumerate(verts) for h in c}
    out = []
    covered = set()
    for ps in H.components:
        vs = sorted({vid[a] for p in ps for a in p})
        covered.update(vs)
        labels = [h for i in vs for h in verts[i]]
        out.append(_component_graph(G, labels, ps))
    for i, c in enumerate(verts):
        if i not in covered:
            out.append(_component_graph(G, c, ()))
    return out


def contract(G: RibbonGraph, H: SubgraphSpec | Iterable) -> RibbonGraph:
    pairs = H.pairs if isinstance(H, SubgraphSpec) else H
    return contract_pairs(G, pairs)


def pi_project(G: RibbonGraph) -> RibbonGraph:
    """Delete bivalent vertices, splicing their two attachments together."""
    sig = G.sigma.as_dict()
    alp = G.alpha.as_dict()
    root = G.root_half_edge
    while True:
        biv = next(((x, sig[x]) for x in sig if sig[sig[x]] == x and sig[x] != x), None)
        if biv is None:
            break
        x, y = biv
        a, b = alp[x], alp[y]
        for h in (x, y):
            del sig[h], alp[h]
        if a == y:
            pass  # closed loop with no legs
        elif a == x and b == y:
            if root in (x, y):
                root = None
        elif a == x:
            alp[b] = b
            if root == x:
                root = b
        elif b == y:
            alp[a] = a
            if root == y:
                root = a
        else:
            alp[a], alp[b] = b, a
    cls = type(G)
    if root is not None and root not in alp:
        root = None
    return cls(Permutation(sig), Permutation(alp), root)


# ---------------------------------------------------------------- coproduct

@lru_cache(maxsize=None)
def _delta_generator(key: str, rooted_right: bool) -> TensorPoly:
    G = key_graph(key)
    t = TensorPoly()
    for H in admissible_subgraphs(G):
        left: Monomial = ()
        for C in subgraph_components(G, H):
            left = mono_mul(left, mono(graph_key(C, rooted=False)))
        Q = pi_project(contract(G, H))
        right = mono(graph_key(Q, rooted=rooted_right))
        t.add_term((left, right), 1)
    return t


def _delta_mono(m: Monomial, rooted_right: bool) -> TensorPoly:
    t = TensorPoly({((), ()): 1})
    for k, e in m:
        if k == VERTEX:
            t = t * TensorPoly({(((k, e),), ((k, e),)): 1})
            continue
        if e < 0:
            raise ValueError("only the vertex may carry a negative power")
        d = _delta_generator(k, rooted_right)
        for _ in range(e):
            t = t * d
    return t


def coproduct(x: GraphPoly) -> TensorPoly:
    """Hopf coproduct on unrooted keys."""
    t = TensorPoly()
    for m, c in x.terms.items():
        t = t + _delta_mono(m, False) * c
    return t


def coaction(x: GraphPoly) -> TensorPoly:
    """Coproduct on rooted keys: unrooted left legs, rooted right legs."""
    t = TensorPoly()
    for m, c in x.terms.items():
        t = t + _delta_mono(m, True) * c
    return t


def reduced_coproduct(x: GraphPoly, rooted_right: bool = False) -> TensorPoly:
    """Drop the terms whose left or right leg is a pure vertex power (or 1)."""
    full = coaction(x) if rooted_right else coproduct(x)
    return TensorPoly({(a, b): c for (a, b), c in full.terms.items()
                       if not _is_residue_mono(a) and not _is_residue_mono(b)})


def _is_residue_mono(m: Monomial) -> bool:
    return all(k == VERTEX for k, _ in m)


def counit(x: GraphPoly) -> Fraction:
    return sum((c for m, c in x.terms.items() if _is_residue_mono(m)), Fraction(0))


def unroot(x: GraphPoly) -> GraphPoly:
    return x.map_keys(unrooted_key)


# ---------------------------------------------------------------- antipode

@lru_cache(maxsize=None)
def _antipode_generator(key: str) -> GraphPoly:
    if key == VERTEX:
        return GraphPoly({((VERTEX, -1),): 1})
    G = key_graph(key)
    nv = len(G.vertices)
    total = GraphPoly({mono_mul(((VERTEX, -nv),), mono(key)): 1})
    top = None
    for (left, right), c in _delta_generator(key, False).terms.items():
        if left == mono(key):
            top = right
            continue
        if left == ((VERTEX, nv),):
            continue
        total = total + antipode(GraphPoly({left: c})) * GraphPoly({right: 1})
    # S(G) * res(G) = -total
    res_inv = GraphPoly({((VERTEX, -1),): 1}) if top == mono(VERTEX) else GraphPoly.one()
    return -(total * res_inv)


def antipode(x: GraphPoly) -> GraphPoly:
    out = GraphPoly()
    for m, c in x.terms.items():
        t = GraphPoly({(): c})
        for k, e in m:
            s = _antipode_generator(k)
            if k == VERTEX:
                t = t * GraphPoly({((VERTEX, -e),): 1})
            else:
                t = t * (s ** e)
        out = out + t
    return out


def convolution_check(x: GraphPoly) -> tuple[bool, bool]:
    """``m(S (x) id)Delta = u eps`` and ``m(id (x) S)Delta = u eps`` on ``x``."""
    d = coproduct(x)
    unit = GraphPoly({(): counit(x)})
    left = d.map_left(antipode).multiply()
    right = d.map_right(antipode).multiply()
    return left == unit, right == unit
