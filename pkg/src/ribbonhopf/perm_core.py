"""Permutations on finite sets of positive integer labels.

A :class:`Permutation` is an immutable bijection of a finite label set.
Its text form is the canonical cycle form: each cycle rotated to start at
its minimum, cycles sorted by minimum, fixed points written as ``(k)``::

    >>> p = Permutation.parse("(4 3 2 1)(8 7 6 5)")
    >>> str(p)
    '(1 4 3 2)(5 8 7 6)'
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

__all__ = [
    "Permutation",
    "cycles",
    "compose",
    "inverse",
    "restrict_cycles",
]

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    """Immutable bijection on a finite set of positive integers."""

    __slots__ = ("_map", "_hash")

    def __init__(self, mapping: Mapping[int, int]):
        m = dict(mapping)
        if set(m.values()) != set(m):
            raise ValueError("mapping is not a bijection of its domain")
        for k in m:
            if not isinstance(k, int) or k <= 0:
                raise ValueError(f"labels must be positive integers, got {k!r}")
        self._map = m
        self._hash = None

    @classmethod
    def identity(cls, domain: Iterable[int]) -> "Permutation":
        return cls({x: x for x in domain})

    @classmethod
    def from_cycles(cls, cyc: Iterable[Iterable[int]], domain: Iterable[int] | None = None) -> "Permutation":
        """Build from cycles; labels of ``domain`` not in any cycle are fixed."""
        m: dict[int, int] = {}
        for c in cyc:
            c = list(c)
            for i, x in enumerate(c):
                if x in m:
                    raise ValueError(f"label {x} appears twice")
                m[x] = c[(i + 1) % len(c)]
        if domain is not None:
            for x in domain:
                m.setdefault(x, x)
        return cls(m)

    @classmethod
    def parse(cls, text: str, domain: Iterable[int] | None = None) -> "Permutation":
        text = text.strip()
        rest = _CYCLE_RE.sub("", text).strip()
        if rest:
            raise ValueError(f"malformed cycle syntax: {text!r}")
        cyc = []
        for body in _CYCLE_RE.findall(text):
            parts = body.replace(",", " ").split()
            if not parts:
                raise ValueError(f"empty cycle in {text!r}")
            try:
                cyc.append([int(x) for x in parts])
            except ValueError:
                raise ValueError(f"malformed cycle syntax: {text!r}") from None
        return cls.from_cycles(cyc, domain)

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(sorted(self._map))

    def __call__(self, x: int) -> int:
        return self._map[x]

    def __len__(self) -> int:
        return len(self._map)

    def __contains__(self, x) -> bool:
        return x in self._map

    def items(self):
        return self._map.items()

    def as_dict(self) -> dict[int, int]:
        return dict(self._map)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for x in sorted(self._map):
            if x in seen:
                continue
            c = [x]
            seen.add(x)
            y = self._map[x]
            while y != x:
                c.append(y)
                seen.add(y)
                y = self._map[y]
            out.append(tuple(c))
        return out

    def fixed_points(self) -> list[int]:
        return sorted(x for x, y in self._map.items() if x == y)

    def is_identity(self) -> bool:
        return all(x == y for x, y in self._map.items())

    def is_involution(self) -> bool:
        return all(self._map[y] == x for x, y in self._map.items())

    def inverse(self) -> "Permutation":
        return Permutation({y: x for x, y in self._map.items()})

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._map == other._map

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._map.items()))
        return self._hash

    def __str__(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())

    def __repr__(self) -> str:
        return f"Permutation.parse({str(self)!r})"


def cycles(p: Permutation) -> list[tuple[int, ...]]:
    """Cycles of ``p`` in canonical form (min-first, sorted by minimum)."""
    return p.cycles()


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p o q``, i.e. ``x -> p(q(x))``."""
    if p._map.keys() != q._map.keys():
        raise ValueError("cannot compose permutations with different domains")
    pm = p._map
    return Permutation({x: pm[y] for x, y in q._map.items()})


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def restrict_cycles(p: Permutation, keep: Iterable[int]) -> Permutation:
    """Delete every label outside ``keep`` from the cycles of ``p``."""
    keep = set(keep)
    if not keep <= p._map.keys():
        raise ValueError("keep must be a subset of the domain")
    m = p._map
    out = {}
    for x in keep:
        y = m[x]
        while y not in keep:
            y = m[y]
        out[x] = y
    return Permutation(out)
