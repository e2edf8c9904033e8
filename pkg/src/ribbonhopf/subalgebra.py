"""Coproduct polynomials of the perturbative series and Hochschild checks.

Symbols ``c^v_j`` (j >= 0) and ``c^e_j`` (j >= 1) stand for the loop-``j``
coefficients of ``X^v`` and ``X^e``.  Evaluation sends a symbol to its
enumerated value: unrooted on left legs, rooted on right legs, ``c^v_0`` to
the bare vertex and ``c^e_0`` to the unit.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache

from .dse import GraphSeries, _primitives, dse_argument, graft, is_primitive, x_series
from .enumeration import Filter, enumerate_graphs
from .hopf import (
    VERTEX,
    GraphPoly,
    TensorPoly,
    admissible_subgraphs,
    coaction,
    contract,
    graph_key,
    key_graph,
    mono_loops,
    pi_project,
    unroot,
)
from .ribbon import RibbonGraph

__all__ = [
    "CoeffPolynomial",
    "symbol",
    "q_v",
    "q_e",
    "p_poly",
    "c_values",
    "evaluate",
    "verify_cn_coproduct",
    "verify_monomial_coproduct",
    "hochschild_check",
    "cograph_loop_spectrum",
    "cograph_spectrum_scan",
]


# ---------------------------------------------------------------- polynomials

class CoeffPolynomial:
    """Polynomial in the symbols ``(kind, j)`` with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[tuple, Fraction] = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[m] = c

    @classmethod
    def one(cls) -> "CoeffPolynomial":
        return cls({(): 1})

    def _add(self, m, c):
        c = self.terms.get(m, 0) + c
        if c:
            self.terms[m] = Fraction(c)
        else:
            self.terms.pop(m, None)

    def __add__(self, other: "CoeffPolynomial") -> "CoeffPolynomial":
        out = CoeffPolynomial(self.terms)
        for m, c in other.terms.items():
            out._add(m, c)
        return out

    def __neg__(self) -> "CoeffPolynomial":
        return self * -1

    def __sub__(self, other: "CoeffPolynomial") -> "CoeffPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "CoeffPolynomial":
        if not isinstance(other, CoeffPolynomial):
            return CoeffPolynomial({m: c * Fraction(other) for m, c in self.terms.items()})
        out = CoeffPolynomial()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                e = Counter(dict(m1))
                e.update(dict(m2))
                out._add(tuple(sorted(e.items())), c1 * c2)
        return out

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CoeffPolynomial":
        if e < 0:
            raise ValueError("negative power")
        out = CoeffPolynomial.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoeffPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def grades(self) -> set[int]:
        return {sum(j * e for (_, j), e in m) for m in self.terms}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            sym = " ".join(f"c^{k}_{j}" + (f"^{e}" if e != 1 else "") for (k, j), e in m)
            parts.append(f"{c} {sym}".strip() if sym else str(c))
        return " + ".join(parts)


def symbol(kind: str, j: int) -> CoeffPolynomial:
    if kind == "e" and j == 0:
        return CoeffPolynomial.one()
    return CoeffPolynomial({(((kind, j), 1),): 1})


def _compositions(j: int, k: int):
    if k == 0:
        if j == 0:
            yield ()
        return
    for first in range(j + 1):
        for rest in _compositions(j - first, k - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def q_v(k: int, j: int) -> CoeffPolynomial:
    """``sum_{l_1+...+l_k=j} c^v_{l_1}...c^v_{l_k}``, the loop-``j`` part of ``(X^v)^k``."""
    out = CoeffPolynomial()
    for comp in _compositions(j, k):
        t = CoeffPolynomial.one()
        for l in comp:
            t = t * symbol("v", l)
        out = out + t
    return out


def _partitions(j: int, largest: int | None = None):
    # partitions of j as dicts part -> multiplicity
    largest = j if largest is None else largest
    if j == 0:
        yield {}
        return
    for p in range(min(j, largest), 0, -1):
        for rest in _partitions(j - p, p):
            r = dict(rest)
            r[p] = r.get(p, 0) + 1
            yield r


@lru_cache(maxsize=None)
def q_e(k: int, j: int) -> CoeffPolynomial:
    """Loop-``j`` part of ``(X^e)^-k`` by the Faa di Bruno weights."""
    if k == 0:
        return CoeffPolynomial.one() if j == 0 else CoeffPolynomial()
    out = CoeffPolynomial()
    for part in _partitions(j):
        s = sum(part.values())
        w = Fraction(math.factorial(s + k - 1),
                     math.prod(math.factorial(m) for m in part.values()) * math.factorial(k - 1))
        t = CoeffPolynomial.one() * w
        for l, m in part.items():
            for _ in range(m):
                t = t * symbol("e", l)
        out = out + t
    return out


@lru_cache(maxsize=None)
def p_poly(kind: str, n: int, k: int) -> CoeffPolynomial:
    """Left-leg polynomial of loop order ``k`` paired with ``c_{n-k}``."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    if k == n:
        return symbol(kind, n) if n or kind == "v" else CoeffPolynomial.one()
    out = CoeffPolynomial()
    m = n - k
    for j in range(k + 1):
        if kind == "v":
            out = out + q_v(m + 1, j) * q_e(2 * m, k - j)
        elif kind == "e":
            out = out + q_v(m, j) * q_e(2 * m - 1, k - j)
        else:
            raise ValueError(kind)
    return out


# ---------------------------------------------------------------- evaluation

@lru_cache(maxsize=None)
def _c_value(kind: str, n: int) -> GraphPoly:
    if n == 0:
        return GraphPoly.gen(VERTEX) if kind == "v" else GraphPoly.one()
    return GraphPoly.from_graphs(enumerate_graphs(2 if kind == "e" else 4, n, Filter.ONE_PI))


def c_values(kind: str, n: int) -> GraphPoly:
    """``c^kind_n`` as a sum of rooted graphs (``c^v_0 = v``, ``c^e_0 = 1``)."""
    return _c_value(kind, n)


def evaluate(p: CoeffPolynomial, rooted: bool = False) -> GraphPoly:
    out = GraphPoly()
    for m, c in p.terms.items():
        t = GraphPoly({(): c})
        for (kind, j), e in m:
            val = c_values(kind, j)
            if not rooted:
                val = unroot(val)
            t = t * val ** e
        out = out + t
    return out


def _witness(lhs: TensorPoly, rhs: TensorPoly):
    diff = lhs - rhs
    if not diff.terms:
        return None
    (a, b), c = diff.sorted_items()[0]
    return {"left": [k for k, _ in a], "right": [k for k, _ in b], "lhs_minus_rhs": str(c)}


def verify_cn_coproduct(kind: str, n: int, report: bool = False):
    """``Delta(c_n) = sum_k P_{n,k} (x) c_{n-k}`` with enumerated values."""
    lhs = coaction(c_values(kind, n))
    rhs = TensorPoly()
    for k in range(n + 1):
        rhs = rhs + TensorPoly.simple(evaluate(p_poly(kind, n, k)), c_values(kind, n - k))
    ok = lhs == rhs
    if not report:
        return ok
    return {"check": "cn_coproduct", "params": {"kind": kind, "n": n},
            "verdict": "PASS" if ok else "FAIL", "witness": _witness(lhs, rhs)}


def _enumerated_series(kind: str, order: int) -> GraphSeries:
    return x_series(kind, {j: c_values(kind, j) for j in range(1, order + 1)}, order)


def verify_monomial_coproduct(n1: int, n2: int, N: int, report: bool = False):
    """``Delta f = sum_k f Q^k (x) f_k`` for ``f = (X^v)^n1 / (X^e)^n2``."""
    xv = _enumerated_series("v", N)
    xe = _enumerated_series("e", N)
    f = xv ** n1 * xe ** (-n2)
    q = xv * xe ** -2
    lhs = TensorPoly()
    for m in range(N + 1):
        lhs = lhs + coaction(f[m])
    rhs = TensorPoly()
    for k in range(N + 1):
        left = f * q ** k
        for a in range(N - k + 1):
            rhs = rhs + TensorPoly.simple(unroot(left[a]), f[k])
    ok = lhs == rhs
    if not report:
        return ok
    return {"check": "monomial_coproduct", "params": {"n1": n1, "n2": n2, "N": N},
            "verdict": "PASS" if ok else "FAIL", "witness": _witness(lhs, rhs)}


# ---------------------------------------------------------------- Hochschild

def _hochschild_terms(kind: str, N: int, loops: list[int], per_place: bool):
    ce = {j: c_values("e", j) for j in range(1, N + 1)}
    cv = {j: c_values("v", j) for j in range(1, N + 1)}
    residue = GraphPoly.gen(VERTEX) if kind == "v" else GraphPoly.one()
    n_ext = 4 if kind == "v" else 2
    lhs = TensorPoly()
    rhs = TensorPoly()
    for f in loops:
        for pk in _primitives(n_ext, f):
            if N - f < 0:
                continue
            arg = dse_argument(kind, f, ce, cv, N - f)
            x = GraphPoly()
            for a in range(N - f + 1):
                x = x + arg[a]
            bx = graft(pk, x, per_place=per_place)
            lhs = lhs + coaction(bx)
            rhs = rhs + TensorPoly.simple(unroot(bx), residue)
            rhs = rhs + coaction(x).map_right(lambda r: graft(pk, r, per_place=per_place))
    return lhs, rhs


def hochschild_check(kind: str, N: int, per_loop: bool = False, per_place: bool = True) -> dict:
    """Check ``Delta B+ = B+ (x) res + (id (x) B+) Delta`` on the DSE argument.

    Without ``per_loop`` the grafting operators of all primitives up to ``N``
    loops are summed.  With ``per_loop`` each fixed-loop operator is tested
    on its own and the verdicts are returned as data.
    """
    n_ext = 4 if kind == "v" else 2
    avail = [f for f in range(1, N + 1) if _primitives(n_ext, f)]
    if not per_loop:
        lhs, rhs = _hochschild_terms(kind, N, avail, per_place)
        ok = lhs == rhs
        return {"check": "hochschild", "params": {"kind": kind, "N": N, "per_loop": False},
                "verdict": "PASS" if ok else "FAIL", "terms": len(lhs), "witness": _witness(lhs, rhs)}
    rows = []
    for f in avail:
        lhs, rhs = _hochschild_terms(kind, N, [f], per_place)
        ok = lhs == rhs
        rows.append({"loops": f, "primitives": len(_primitives(n_ext, f)),
                     "holds": ok, "witness": _witness(lhs, rhs)})
    return {"check": "hochschild", "params": {"kind": kind, "N": N, "per_loop": True},
            "verdict": "REPORT", "rows": rows}


def cograph_loop_spectrum(G: RibbonGraph) -> set[int]:
    """Loop numbers of the primitive cographs ``pi(G/H)``, ``H`` proper admissible."""
    out = set()
    for H in admissible_subgraphs(G):
        if len(H.pairs) == len(G.internal_pairs):
            continue
        Q = pi_project(contract(G, H))
        if is_primitive(Q):
            out.add(Q.loops)
    return out


def cograph_spectrum_scan(max_loops: int) -> dict:
    """Spectra of every 1PI graph up to ``max_loops`` (data, no verdict)."""
    rows = []
    non_singleton = []
    for n_ext in (2, 4):
        for loops in range(1, max_loops + 1):
            sizes = Counter()
            for G in enumerate_graphs(n_ext, loops, Filter.ONE_PI):
                spec = cograph_loop_spectrum(G)
                sizes[len(spec)] += 1
                if len(spec) > 1:
                    non_singleton.append({"graph": graph_key(G), "spectrum": sorted(spec)})
            rows.append({"n_ext": n_ext, "loops": loops, "graphs": sum(sizes.values()),
                         "spectrum_sizes": {str(k): v for k, v in sorted(sizes.items())}})
    return {"check": "cograph_loop_spectrum", "params": {"max_loops": max_loops},
            "verdict": "REPORT", "all_singletons": not non_singleton,
            "rows": rows, "non_singleton": non_singleton}
