"""Enumeration of planar one-boundary quartic ribbon graphs.

Graphs are grown directly in canonical labelling order.  Starting from the
root vertex ``(1 4 3 2)`` with half-edge 1 external, the smallest undecided
half-edge either becomes external, is paired with a later open half-edge
on the same face cycle, or opens a new vertex labelled next.  This visits
every rooted graph exactly once, already in canonical form.  Pairing only
within a face cycle keeps the genus at zero, and keeping every external
half-edge on the face cycle of the root keeps a single boundary.
"""

from __future__ import annotations

import builtins
import enum
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .perm_core import Permutation
from .ribbon import RibbonGraph, empty_graph, is_bridgeless, parse, serialize
from .series import PowerSeries

__all__ = [
    "Filter",
    "EnumKey",
    "CountSeries",
    "ResourceGuardError",
    "ENGINE_VERSION",
    "MAX_LOOPS",
    "enumerate_graphs",
    "enumerate",
    "counting_series",
    "verify_counts",
    "lambda_order",
]

ENGINE_VERSION = 1
MAX_LOOPS = 6
CACHE_ENV = "RIBBONHOPF_CACHE"

_memo: dict = {}


class ResourceGuardError(RuntimeError):
    pass


class Filter(enum.Enum):
    CONNECTED = "connected"
    ONE_PI = "onepi"


@dataclass(frozen=True)
class EnumKey:
    n_ext: int
    loops: int
    filter: Filter = Filter.CONNECTED

    def __post_init__(self):
        if self.n_ext not in (2, 4):
            raise ValueError("n_ext must be 2 or 4")
        if self.loops < 0:
            raise ValueError("loops must be nonnegative")

    @property
    def lambda_order(self) -> int:
        return lambda_order(self.n_ext, self.loops)

    @property
    def vertices(self) -> int:
        return self.lambda_order

    def text(self) -> str:
        return f"{self.n_ext}/{self.loops}/{self.filter.value}"


def lambda_order(n_ext: int, loops: int) -> int:
    return loops if n_ext == 2 else loops + 1


# ---------------------------------------------------------------- generator

class _State:
    """Mutable partial graph; labels are 1-based list indices."""

    def __init__(self, vmax: int, n_ext: int):
        size = 4 * vmax + 1
        self.vmax = vmax
        self.n_ext = n_ext
        self.sig = [0] * size
        self.siginv = [0] * size
        self.alp = [0] * size   # 0 = undecided
        self.nlab = 0
        self.next_undecided = 1
        self.n_ext_done = 0
        self.add_vertex()
        self.alp[1] = 1
        self.n_ext_done = 1

    def copy(self) -> "_State":
        s = object.__new__(_State)
        s.vmax, s.n_ext = self.vmax, self.n_ext
        s.sig, s.siginv, s.alp = self.sig[:], self.siginv[:], self.alp[:]
        s.nlab, s.next_undecided, s.n_ext_done = self.nlab, self.next_undecided, self.n_ext_done
        return s

    def add_vertex(self) -> int:
        L = self.nlab
        a, b, c, d = L + 1, L + 2, L + 3, L + 4
        # sigma = (a d c b), so sigma^-1 reads a, b, c, d
        self.sig[a], self.sig[d], self.sig[c], self.sig[b] = d, c, b, a
        self.siginv[a], self.siginv[b], self.siginv[c], self.siginv[d] = b, c, d, a
        self.nlab = L + 4
        return a

    def remove_vertex(self):
        L = self.nlab
        for h in range(L - 3, L + 1):
            self.sig[h] = self.siginv[h] = self.alp[h] = 0
        self.nlab = L - 4

    def phi(self, h: int) -> int:
        a = self.alp[h]
        return self.siginv[a if a else h]

    def cycle(self, h: int) -> list[int]:
        out = [h]
        x = self.phi(h)
        while x != h:
            out.append(x)
            x = self.phi(x)
        return out

    def code(self) -> tuple:
        n = self.nlab
        return tuple(self.sig[1: n + 1]) + tuple(self.alp[1: n + 1])


def _options(st: _State, h: int):
    """Yield (kind, partner) choices for the undecided half-edge ``h``."""
    cyc = st.cycle(h)
    alp = st.alp
    on_root = 1 in cyc
    if on_root and st.n_ext_done < st.n_ext:
        yield ("ext", h)
    for j in builtins.range(1, len(cyc)):
        y = cyc[j]
        if alp[y] or y == h:
            continue
        if on_root:
            # after pairing, cyc[1..j] and cyc[j+1..] + [h] become two cycles
            ext_b = any(alp[x] == x for x in cyc[1: j + 1])
            ext_a = any(alp[x] == x for x in cyc[j + 1:])
            if ext_a and ext_b:
                continue
        yield ("pair", y)
    if st.nlab // 4 < st.vmax:
        yield ("new", 0)


def _feasible(st: _State) -> bool:
    need = st.n_ext - st.n_ext_done
    if need == 0:
        return True
    open_count = sum(1 for h in builtins.range(1, st.nlab + 1) if not st.alp[h])
    if open_count + 2 * (st.vmax - st.nlab // 4) < need:
        return False
    # new externals can only appear on the face cycle of the root
    return any(not st.alp[x] for x in st.cycle(1))


def _advance(st: _State) -> int:
    h = st.next_undecided
    while h <= st.nlab and st.alp[h]:
        h += 1
    return h


def _dfs(st: _State, out: list, depth_limit: int | None = None, frontier: list | None = None,
         depth: int = 0):
    h = _advance(st)
    if h > st.nlab:
        if st.nlab // 4 == st.vmax and st.n_ext_done == st.n_ext:
            out.append(st.code())
        return
    if not _feasible(st):
        return
    if depth_limit is not None and depth >= depth_limit:
        frontier.append(st.copy())
        return
    saved = st.next_undecided
    st.next_undecided = h
    for kind, y in list(_options(st, h)):
        if kind == "ext":
            st.alp[h] = h
            st.n_ext_done += 1
            _dfs(st, out, depth_limit, frontier, depth + 1)
            st.n_ext_done -= 1
            st.alp[h] = 0
        elif kind == "pair":
            st.alp[h], st.alp[y] = y, h
            _dfs(st, out, depth_limit, frontier, depth + 1)
            st.alp[h] = st.alp[y] = 0
        else:
            a = st.add_vertex()
            st.alp[h], st.alp[a] = a, h
            _dfs(st, out, depth_limit, frontier, depth + 1)
            st.alp[h] = 0
            st.remove_vertex()
    st.next_undecided = saved


def _run_from(st: _State) -> list:
    out: list = []
    _dfs(st, out)
    return out


def _from_code(code: tuple) -> RibbonGraph:
    n = len(code) // 2
    return RibbonGraph(Permutation({i + 1: code[i] for i in builtins.range(n)}),
                       Permutation({i + 1: code[n + i] for i in builtins.range(n)}))


def _generate(n_ext: int, vmax: int, workers: int = 1) -> list[tuple]:
    st = _State(vmax, n_ext)
    if workers <= 1:
        return _run_from(st)
    out: list = []
    frontier: list = []
    depth = 1
    while True:
        out, frontier = [], []
        _dfs(st.copy(), out, depth, frontier)
        if len(frontier) >= 4 * workers or not frontier or depth > 4 * vmax:
            break
        depth += 1
    with ProcessPoolExecutor(max_workers=workers) as ex:
        for part in ex.map(_run_from, frontier):
            out.extend(part)
    return out


# ---------------------------------------------------------------- cache

def _cache_file(cache_dir: Path, key: EnumKey) -> Path:
    return cache_dir / f"v{ENGINE_VERSION}_n{key.n_ext}_k{key.loops}_{key.filter.value}.txt"


def _read_cache(path: Path, key: EnumKey) -> list[RibbonGraph] | None:
    try:
        lines = path.read_text().splitlines()
    except OSError:
        return None
    if not lines or not lines[0].startswith(f"key={key.text()}; count="):
        return None
    count = int(lines[0].split("count=")[1])
    graphs = [parse(x) for x in lines[1:] if x.strip()]
    return graphs if len(graphs) == count else None


def _write_cache(path: Path, key: EnumKey, graphs: list[RibbonGraph]):
    path.parent.mkdir(parents=True, exist_ok=True)
    body = f"key={key.text()}; count={len(graphs)}\n" + "".join(serialize(g) + "\n" for g in graphs)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as f:
        f.write(body)
    os.replace(tmp, path)


def cache_file_text(key: EnumKey, graphs: list[RibbonGraph]) -> str:
    return f"key={key.text()}; count={len(graphs)}\n" + "".join(serialize(g) + "\n" for g in graphs)


# ---------------------------------------------------------------- public API

def enumerate_graphs(n_ext: int | EnumKey, loops: int | None = None,
                     filter: Filter = Filter.CONNECTED, *, workers: int = 1,
                     cache_dir: str | os.PathLike | None = None) -> list[RibbonGraph]:
    """All rooted connected planar graphs with one boundary of ``n_ext`` legs.

    Output is sorted by serialization.  ``loops`` counts internal faces.
    Loop order 0 gives the residue: the bare edge (empty graph) for
    2-point, the bare vertex for 4-point.  Results are memoized in-process
    and, if ``cache_dir`` or the ``RIBBONHOPF_CACHE`` environment variable
    is set, cached on disk.
    """
    key = n_ext if isinstance(n_ext, EnumKey) else EnumKey(n_ext, loops, filter)
    if key.loops > MAX_LOOPS:
        raise ResourceGuardError(f"loop order {key.loops} exceeds the guard {MAX_LOOPS}")
    if cache_dir is None:
        cache_dir = os.environ.get(CACHE_ENV) or None
    path = _cache_file(Path(cache_dir), key) if cache_dir is not None else None
    if key in _memo:
        graphs = list(_memo[key])
        if path is not None and not path.exists():
            _write_cache(path, key, graphs)
        return graphs
    if path is not None:
        cached = _read_cache(path, key)
        if cached is not None:
            _memo[key] = tuple(cached)
            return cached
    if key.n_ext == 2 and key.loops == 0:
        graphs = [empty_graph()]
    else:
        codes = _generate(key.n_ext, key.vertices, workers)
        graphs = [_from_code(c) for c in codes]
        if key.filter is Filter.ONE_PI:
            graphs = [g for g in graphs if is_bridgeless(g)]
    graphs.sort(key=serialize)
    if path is not None:
        _write_cache(path, key, graphs)
    _memo[key] = tuple(graphs)
    return graphs


enumerate = enumerate_graphs


# ---------------------------------------------------------------- counting

@dataclass(frozen=True)
class CountSeries:
    """Counting generating function in ``lambda`` with exact coefficients."""

    kind: str
    coefficients: tuple[Fraction, ...]

    @property
    def sign(self) -> int:
        # the 4-point series are odd under lambda -> -lambda at leading order
        return 1 if self.kind in ("G2", "PI2") else -1

    def count(self, m: int) -> int:
        """Number of graphs at lambda-order ``m``."""
        c = self.sign * (-1) ** m * self.coefficients[m]
        if c.denominator != 1 or c < 0:
            raise ArithmeticError(f"non-integral count {c} at order {m}")
        return int(c)

    def counts(self) -> list[int]:
        return [self.count(m) for m in builtins.range(len(self.coefficients))]


def _c_squared(order: int) -> PowerSeries:
    # c^2 = (sqrt(1 + 12 x) - 1) / (6 x); one extra order is lost in the shift
    s = PowerSeries([1, 12], order + 1).sqrt()
    return (s - 1).shift_down() / 6


def counting_series(kind: str, max_order: int) -> CountSeries:
    if max_order > 12:
        raise ResourceGuardError("max_order <= 12")
    c2 = _c_squared(max_order)
    x = PowerSeries.x(max_order)
    g2 = x * c2 ** 3 + c2
    g4 = 2 * x * x * c2 ** 6 + x * c2 ** 4
    series = {
        "G2": g2,
        "G4": g4,
        "PI2": (g2 - 1) / g2,
        "PI4": g4 / g2 ** 4,
    }
    if kind not in series:
        raise ValueError(f"unknown kind {kind!r}")
    return CountSeries(kind, tuple(series[kind].coeffs))


_KINDS = {
    "G2": (2, Filter.CONNECTED),
    "G4": (4, Filter.CONNECTED),
    "PI2": (2, Filter.ONE_PI),
    "PI4": (4, Filter.ONE_PI),
}


def verify_counts(max_order: int, kinds=("G2", "G4", "PI2", "PI4"), *, workers: int = 1,
                  cache_dir=None) -> dict:
    """Compare enumeration sizes with the series for lambda-orders up to ``max_order``.

    The 1PI 2-point series has no constant term, so its order 0 is skipped.
    """
    rows = []
    for kind in kinds:
        n_ext, flt = _KINDS[kind]
        cs = counting_series(kind, max_order)
        for m in builtins.range(max_order + 1):
            loops = m if n_ext == 2 else m - 1
            if loops < 0 or (kind == "PI2" and m == 0):
                continue
            expected = cs.count(m)
            got = len(enumerate_graphs(n_ext, loops, flt, workers=workers, cache_dir=cache_dir))
            rows.append({"kind": kind, "order": m, "loops": loops,
                         "series": expected, "enumerated": got, "ok": expected == got})
    return {"rows": rows, "mismatches": [r for r in rows if not r["ok"]]}
