"""Combinatorial ribbon graphs ``(H, sigma, alpha)``.

``sigma`` encodes vertices (its cycles are the cyclic orders of half-edges),
``alpha`` is an involution whose 2-cycles are internal edges and whose fixed
points are external legs.  Cycles of ``phi = sigma^-1 o alpha`` are internal
faces, or boundaries when they contain an external half-edge.

A graph may carry a root: a distinguished external half-edge.  Without an
explicit root the smallest external label is the root.  Canonical forms
label the root 1, so canonical graphs never store a root explicitly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .perm_core import Permutation, compose, restrict_cycles

__all__ = [
    "RibbonGraph",
    "MultiTraceGraph",
    "DualMap",
    "Topology",
    "make_graph",
    "empty_graph",
    "vertex_graph",
    "components",
    "is_connected",
    "is_bridgeless",
    "boundaries",
    "topology",
    "faces",
    "external_face_order",
    "face_of",
    "completion",
    "decompletion",
    "dual",
    "is_fully_simple",
    "contract_pairs",
    "residue",
    "skeleton",
    "canonical_form",
    "canonical_code",
    "is_isomorphic",
    "serialize",
    "parse",
    "to_json",
]


@dataclass(frozen=True, eq=True)
class RibbonGraph:
    sigma: Permutation
    alpha: Permutation
    root: int | None = None

    def __post_init__(self):
        if self.sigma._map.keys() != self.alpha._map.keys():
            raise ValueError("sigma and alpha must act on the same half-edges")
        if not self.alpha.is_involution():
            raise ValueError("alpha is not an involution")
        if self.root is not None:
            if self.root not in self.alpha or self.alpha(self.root) != self.root:
                raise ValueError("root must be an external half-edge")
            if self.root == min(self.external):
                object.__setattr__(self, "root", None)

    @cached_property
    def half_edges(self) -> tuple[int, ...]:
        return self.sigma.domain

    @cached_property
    def external(self) -> tuple[int, ...]:
        return tuple(self.alpha.fixed_points())

    @cached_property
    def internal_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(c for c in self.alpha.cycles() if len(c) == 2)

    @cached_property
    def vertices(self) -> list[tuple[int, ...]]:
        return self.sigma.cycles()

    @cached_property
    def phi(self) -> Permutation:
        return compose(self.sigma.inverse(), self.alpha)

    @property
    def root_half_edge(self) -> int | None:
        if self.root is not None:
            return self.root
        return self.external[0] if self.external else None

    @property
    def is_empty(self) -> bool:
        return len(self.sigma) == 0

    @property
    def n_external(self) -> int:
        return len(self.external)

    def valence_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.vertices:
            out[len(c)] = out.get(len(c), 0) + 1
        return out

    @cached_property
    def loops(self) -> int:
        """Number of internal faces."""
        ext = set(self.external)
        return sum(1 for c in self.phi.cycles() if not ext.intersection(c))

    def with_root(self, root: int | None) -> "RibbonGraph":
        return type(self)(self.sigma, self.alpha, root)

    def __str__(self) -> str:
        return serialize(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({serialize(self)!r})"


class MultiTraceGraph(RibbonGraph):
    """Contraction image of a subgraph with more than one boundary.

    Its sigma-cycles represent a single multi-trace vertex, which ribbon
    graphs cannot express; such graphs never enter the Hopf algebra.
    """


@dataclass(frozen=True)
class Topology:
    genus: int
    boundaries: int
    boundary_lengths: tuple[int, ...]
    internal_faces: int
    vertices: int
    edges: int

    @property
    def faces(self) -> int:
        return self.internal_faces + sum(self.boundary_lengths)

    @property
    def euler(self) -> int:
        return self.vertices - self.edges + self.faces


@dataclass(frozen=True)
class DualMap:
    """Combinatorial map ``(H, H*, sigma, alpha)`` with marked half-edges H*.

    Labels above ``offset`` are primed copies ``h' = h + offset``.
    """

    unmarked: frozenset
    marked: frozenset
    sigma: Permutation
    alpha: Permutation
    offset: int = 0

    def __post_init__(self):
        dom = set(self.sigma._map)
        if dom != set(self.alpha._map) or dom != set(self.unmarked) | set(self.marked):
            raise ValueError("inconsistent half-edge sets")
        if set(self.unmarked) & set(self.marked):
            raise ValueError("marked and unmarked half-edges overlap")
        if not self.alpha.is_involution() or self.alpha.fixed_points():
            raise ValueError("alpha must be a fixed-point-free involution")
        for c in self.face_cycles():
            if len(self.marked.intersection(c)) > 1:
                raise ValueError("a face carries more than one marked half-edge")

    def face_cycles(self) -> list[tuple[int, ...]]:
        return compose(self.sigma.inverse(), self.alpha).cycles()

    def label(self, h: int) -> str:
        if self.offset and h > self.offset:
            return f"{h - self.offset}'"
        return str(h)

    def format_perm(self, p: Permutation) -> str:
        return "".join("(" + " ".join(self.label(x) for x in c) + ")" for c in p.cycles())

    def __str__(self) -> str:
        fmt = lambda s: "{" + ",".join(self.label(x) for x in sorted(s)) + "}"
        return (f"({fmt(self.unmarked)}, {fmt(self.marked)}, "
                f"{self.format_perm(self.sigma)}, {self.format_perm(self.alpha)})")


# ---------------------------------------------------------------- builders

def make_graph(sigma_cycles, alpha_pairs=(), n: int | None = None, root: int | None = None) -> RibbonGraph:
    """Graph from vertex cycles and internal pairs; other labels are external."""
    sigma = Permutation.from_cycles(sigma_cycles, range(1, n + 1) if n else None)
    alpha = Permutation.from_cycles(alpha_pairs, sigma.domain)
    return RibbonGraph(sigma, alpha, root)


def empty_graph() -> RibbonGraph:
    return RibbonGraph(Permutation({}), Permutation({}))


def vertex_graph(k: int = 4) -> RibbonGraph:
    """A single k-valent vertex with all legs external."""
    return make_graph([[1] + list(range(k, 1, -1))])


# ---------------------------------------------------------------- structure

def _components(G: RibbonGraph) -> list[list[int]]:
    parent = {}
    vert_of = {}
    for i, c in enumerate(G.vertices):
        parent[i] = i
        for h in c:
            vert_of[h] = i

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in G.internal_pairs:
        ra, rb = find(vert_of[a]), find(vert_of[b])
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for i, c in enumerate(G.vertices):
        groups.setdefault(find(i), []).extend(c)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def _subgraph(G: RibbonGraph, labels: Iterable[int]) -> RibbonGraph:
    labels = set(labels)
    sigma = Permutation({h: G.sigma(h) for h in labels})
    alpha = Permutation({h: G.alpha(h) for h in labels})
    r = G.root_half_edge
    cls = type(G)
    return cls(sigma, alpha, r if r in labels else None)


def components(G: RibbonGraph) -> list[RibbonGraph]:
    return [_subgraph(G, c) for c in _components(G)]


def is_connected(G: RibbonGraph) -> bool:
    return len(_components(G)) <= 1


def is_bridgeless(G: RibbonGraph) -> bool:
    """No internal edge whose removal increases the number of components."""
    base = len(_components(G))
    for a, b in G.internal_pairs:
        m = G.alpha.as_dict()
        m[a], m[b] = a, b
        H = RibbonGraph(G.sigma, Permutation(m))
        if len(_components(H)) > base:
            return False
    return True


def boundaries(G: RibbonGraph) -> list[tuple[tuple[int, ...], int]]:
    """Boundary cycles of ``phi`` with their number of external half-edges."""
    ext = set(G.external)
    out = []
    for c in G.phi.cycles():
        k = len(ext.intersection(c))
        if k:
            out.append((c, k))
    return out


def topology(G: RibbonGraph) -> Topology:
    if G.is_empty:
        # the bare edge: no vertex, one edge, two faces
        return Topology(0, 1, (2,), 0, 0, 1)
    if not is_connected(G):
        raise ValueError("topology needs a connected graph")
    bd = boundaries(G)
    b = len(bd)
    lengths = tuple(k for _, k in bd)
    f_int = len(G.phi.cycles()) - b
    V = len(G.vertices)
    E = len(G.internal_pairs) + len(G.external)
    F = f_int + sum(lengths)
    twice_g = 2 - b - V + E - F
    assert twice_g % 2 == 0 and twice_g >= 0, "inconsistent Euler data"
    return Topology(twice_g // 2, b, lengths, f_int, V, E)


def external_face_order(G: RibbonGraph) -> list[int]:
    """External half-edges in boundary order, starting at the root."""
    ext = set(G.external)
    if not ext:
        return []
    out = []
    done = set()
    starts = [G.root_half_edge] + [h for h in G.external if h != G.root_half_edge]
    for s in starts:
        if s in done:
            continue
        h = s
        while True:
            if h in ext:
                out.append(h)
                done.add(h)
            h = G.phi(h)
            if h == s:
                break
    return out


# ------------------------------------------------------------- completion

def _boundary_successor(G: RibbonGraph) -> dict[int, int]:
    """Map each external half-edge to the next external one along phi."""
    ext = set(G.external)
    nxt = {}
    for h in ext:
        x = G.phi(h)
        while x not in ext:
            x = G.phi(x)
        nxt[h] = x
    return nxt


def completion(G: RibbonGraph) -> DualMap:
    """Close every boundary with a new vertex on primed copies of the legs.

    The boundary vertex sends ``h'`` to ``k'`` where ``k`` is the external
    half-edge following ``h`` along its boundary cycle.  Each boundary
    vertex is rooted at the primed root, or at its smallest primed label.
    """
    if G.is_empty:
        s = Permutation.from_cycles([(3, 4)])
        return DualMap(frozenset({4}), frozenset({3}), s, s, offset=2)
    off = max(G.half_edges)
    nxt = _boundary_successor(G)
    sig = G.sigma.as_dict()
    alp = G.alpha.as_dict()
    for h in G.external:
        sig[h + off] = nxt[h] + off
        alp[h] = h + off
        alp[h + off] = h
    marked = set()
    r = G.root_half_edge
    for cyc, _ in boundaries(G):
        ext_here = [h for h in cyc if h in nxt]
        marked.add((r if r in ext_here else min(ext_here)) + off)
    sigma, alpha = Permutation(sig), Permutation(alp)
    unmarked = frozenset(sigma._map) - marked
    return DualMap(unmarked, frozenset(marked), sigma, alpha, off)


def decompletion(M: DualMap) -> RibbonGraph:
    """Inverse of :func:`completion` on completions of graphs."""
    off = M.offset
    keep = [h for h in M.sigma.domain if h <= off]
    sig = {h: M.sigma(h) for h in keep}
    alp = {h: (M.alpha(h) if M.alpha(h) <= off else h) for h in keep}
    G = RibbonGraph(Permutation(sig), Permutation(alp))
    # completion marks the minimum of every boundary except the root's one
    for cyc, _ in boundaries(G):
        ext_here = [h for h in cyc if alp[h] == h]
        for h in ext_here:
            if h + off in M.marked and h != min(ext_here):
                return G.with_root(h)
    return G


def dual(M: DualMap) -> DualMap:
    return DualMap(M.unmarked, M.marked, compose(M.alpha, M.sigma), M.alpha, M.offset)


def is_fully_simple(M: DualMap) -> bool:
    """Every vertex meets at most one boundary face and two boundary edges."""
    bfaces = [set(c) for c in M.face_cycles() if M.marked.intersection(c)]
    in_face = {}
    for i, f in enumerate(bfaces):
        for h in f:
            in_face[h] = i
    bedges = set()
    for h in in_face:
        bedges.add(frozenset((h, M.alpha(h))))
    for v in M.sigma.cycles():
        touched_faces = {in_face[h] for h in v if h in in_face}
        touched_edges = {e for e in bedges for h in v if h in e}
        if len(touched_faces) > 1 or len(touched_edges) > 2:
            return False
    return True


def _completion_faces(G: RibbonGraph) -> tuple[DualMap, list[tuple[int, ...]]]:
    M = completion(G)
    return M, M.face_cycles()


def faces(G: RibbonGraph) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Internal and external faces as cycles of the completion.

    External faces are listed in :func:`external_face_order`; the face of an
    external half-edge ``h`` is the completion face containing ``h``.
    """
    if G.is_empty:
        return [], [(3,), (4,)]
    M, cyc = _completion_faces(G)
    off = M.offset
    internal = [c for c in cyc if all(h <= off for h in c) and not set(c) & set(G.external)]
    where = {h: c for c in cyc for h in c}
    external = [where[h] for h in external_face_order(G)]
    return internal, external


def face_of(G: RibbonGraph) -> tuple[dict[int, int], int]:
    """Face index of every completion half-edge.

    External faces get indices ``0..n-1`` in boundary order, internal faces
    follow.  Returns the map and the completion offset.
    """
    M, cyc = _completion_faces(G)
    order = external_face_order(G)
    where = {h: i for i, c in enumerate(cyc) for h in c}
    idx = {}
    for j, h in enumerate(order):
        idx[where[h]] = j
    k = len(order)
    for i in range(len(cyc)):
        if i not in idx:
            idx[i] = k
            k += 1
    return {h: idx[i] for h, i in where.items()}, M.offset


# ------------------------------------------------------------- contraction

def contract_pairs(G: RibbonGraph, pairs: Iterable[tuple[int, int]]) -> RibbonGraph:
    """Contract the subgraph spanned by the internal pairs ``pairs``.

    The result lives on the half-edges left open by the subgraph, with
    vertices ``C(alpha' o sigma)`` restricted to them.  A component with
    more than one boundary yields a :class:`MultiTraceGraph`.
    """
    pairs = [tuple(p) for p in pairs]
    am = {h: h for h in G.half_edges}
    for a, b in pairs:
        if G.alpha(a) != b or a == b:
            raise ValueError(f"({a} {b}) is not an internal edge")
        am[a], am[b] = b, a
    alpha_h = Permutation(am)
    H = RibbonGraph(G.sigma, alpha_h)
    keep = H.external
    sigma = restrict_cycles(compose(alpha_h, G.sigma), keep)
    alpha = Permutation({h: G.alpha(h) for h in keep})
    multi = any(len(boundaries(C)) > 1 for C in components(H) if C.internal_pairs)
    cls = MultiTraceGraph if multi else RibbonGraph
    r = G.root_half_edge
    return cls(sigma, alpha, r)


def residue(G: RibbonGraph) -> RibbonGraph:
    return contract_pairs(G, G.internal_pairs)


def skeleton(G: RibbonGraph) -> RibbonGraph:
    return RibbonGraph(G.sigma, Permutation.identity(G.half_edges), G.root_half_edge)


# ------------------------------------------------------------- canonical form

def _label_from(sig, siginv, alp, start, n):
    """Canonical labelling from ``start``; returns the code and label order."""
    lab = {}
    order = []

    def take(h):
        x = h
        while True:
            lab[x] = len(order) + 1
            order.append(x)
            x = siginv[x]
            if x == h:
                return

    take(start)
    i = 0
    while i < len(order):
        p = alp[order[i]]
        if p not in lab:
            take(p)
        i += 1
    if len(order) != n:
        return None, None
    code = tuple(lab[sig[h]] for h in order) + tuple(lab[alp[h]] for h in order)
    return code, order


def _connected_code(G: RibbonGraph, rooted: bool) -> tuple[tuple, list[int]]:
    sig = G.sigma._map
    alp = G.alpha._map
    siginv = {y: x for x, y in sig.items()}
    n = len(sig)
    if rooted and G.root_half_edge is not None:
        starts = [G.root_half_edge]
    else:
        starts = list(G.external) or list(G.half_edges)
    best = None
    for s in starts:
        code, order = _label_from(sig, siginv, alp, s, n)
        if best is None or code < best[0]:
            best = (code, order)
    return best


def _from_code(code: tuple) -> RibbonGraph:
    n = len(code) // 2
    sigma = Permutation({i + 1: code[i] for i in range(n)})
    alpha = Permutation({i + 1: code[n + i] for i in range(n)})
    return RibbonGraph(sigma, alpha)


def canonical_code(G: RibbonGraph, rooted: bool = True) -> tuple:
    """Isomorphism invariant code (rooted or not) of a graph."""
    if G.is_empty:
        return ()
    comps = _components(G)
    if len(comps) == 1:
        return _connected_code(G, rooted)[0]
    r = G.root_half_edge if rooted else None
    head = []
    rest = []
    for c in comps:
        sub = _subgraph(G, c)
        if r is not None and r in c:
            head.append(_connected_code(sub, True)[0])
        else:
            rest.append(_connected_code(sub, False)[0])
    return tuple(head + sorted(rest))


def canonical_form(G: RibbonGraph, rooted: bool = True) -> RibbonGraph:
    """Relabel ``G`` canonically.

    Rooted: the root half-edge becomes 1, its vertex is ``(1 4 3 2)`` (so
    ``sigma^-1`` reads 1,2,3,4), and the remaining vertices are labelled in
    the order their half-edges are reached scanning labels upward.
    Unrooted: the smallest rooted code over all external roots.
    Disconnected graphs put the root component first, others sorted.
    """
    if G.is_empty:
        return G
    comps = _components(G)
    if len(comps) == 1:
        return _from_code(_connected_code(G, rooted)[0])
    codes = canonical_code(G, rooted)
    sig, alp = {}, {}
    off = 0
    for code in codes:
        n = len(code) // 2
        for i in range(n):
            sig[off + i + 1] = off + code[i]
            alp[off + i + 1] = off + code[n + i]
        off += n
    return RibbonGraph(Permutation(sig), Permutation(alp))


def is_isomorphic(G: RibbonGraph, H: RibbonGraph, rooted: bool = False) -> bool:
    return canonical_code(G, rooted) == canonical_code(H, rooted)


# ------------------------------------------------------------- text forms

_FIELD_RE = re.compile(r"^\s*(\w+)\s*=\s*(.*?)\s*$")


def serialize(G: RibbonGraph) -> str:
    dom = G.half_edges
    if not dom:
        return "H=0; sigma=; alpha=; ext="
    if dom == tuple(range(1, len(dom) + 1)):
        hs = str(len(dom))
    else:
        hs = "{" + ",".join(map(str, dom)) + "}"
    pairs = "".join(f"({a} {b})" for a, b in G.internal_pairs)
    out = f"H={hs}; sigma={G.sigma}; alpha={pairs}; ext={','.join(map(str, G.external))}"
    if G.root is not None:
        out += f"; root={G.root}"
    return out


def parse(text: str) -> RibbonGraph:
    fields = {}
    for part in text.split(";"):
        if not part.strip():
            continue
        m = _FIELD_RE.match(part)
        if not m:
            raise ValueError(f"malformed field {part!r}")
        fields[m.group(1)] = m.group(2)
    if "H" not in fields:
        raise ValueError("missing H field")
    hs = fields["H"]
    if hs.startswith("{"):
        if not hs.endswith("}"):
            raise ValueError(f"malformed half-edge set {hs!r}")
        body = hs[1:-1].strip()
        dom = [int(x) for x in body.split(",")] if body else []
    else:
        dom = list(range(1, int(hs) + 1))
    if not dom:
        return empty_graph()
    sigma = Permutation.parse(fields.get("sigma", ""), dom)
    if set(sigma.domain) != set(dom):
        raise ValueError("sigma acts outside H")
    alpha = Permutation.parse(fields.get("alpha", ""), dom)
    if set(alpha.domain) != set(dom):
        raise ValueError("alpha acts outside H")
    if not alpha.is_involution():
        raise ValueError("alpha is not an involution")
    if "ext" in fields and fields["ext"].strip():
        ext = sorted(int(x) for x in fields["ext"].split(","))
        if ext != alpha.fixed_points():
            raise ValueError("ext does not match the fixed points of alpha")
    root = int(fields["root"]) if "root" in fields else None
    return RibbonGraph(sigma, alpha, root)


def to_json(G: RibbonGraph) -> dict:
    top = topology(G) if is_connected(G) else None
    return {
        "halfEdges": list(G.half_edges),
        "sigmaCycles": [list(c) for c in G.vertices],
        "alphaPairs": [list(p) for p in G.internal_pairs],
        "ext": list(G.external),
        "topology": None if top is None else {
            "genus": top.genus,
            "boundaries": top.boundaries,
            "boundaryLengths": list(top.boundary_lengths),
            "internalFaces": top.internal_faces,
            "vertices": top.vertices,
            "edges": top.edges,
        },
    }
