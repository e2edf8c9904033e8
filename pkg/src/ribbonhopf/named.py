"""Small named graphs used in examples and tests.

Graphs are written as rotation systems: every vertex lists the names of its
half-edge ends in clockwise order.  A name used twice is an internal edge,
a name used once is an external leg.  With this convention the horizontal
fish reproduces the labelling ``sigma=(1 4 3 2)(5 8 7 6), alpha=(3 5)(4 8)``.
"""

from __future__ import annotations

from collections import Counter
from typing import Sequence

from .perm_core import Permutation
from .ribbon import RibbonGraph, canonical_form, make_graph

__all__ = [
    "rotation_system",
    "bare_vertex",
    "tadpole_up",
    "tadpole_down",
    "fish_horizontal",
    "fish_vertical",
    "two_two_fish",
    "sunrise",
    "tadpole_uu",
    "tadpole_ud",
    "rainbow",
    "double_tadpole_stacked",
    "fish_chain_straight",
    "fish_chain_bent_right",
    "fish_chain_bent_left",
    "box_chain",
    "genus_one_example",
]


def rotation_system(rotations: Sequence[Sequence[str]], root: str | None = None,
                    canonical: bool = True) -> RibbonGraph:
    """Ribbon graph from clockwise rotations; ``root`` names an external leg."""
    counts = Counter(name for rot in rotations for name in rot)
    if any(c > 2 for c in counts.values()):
        raise ValueError("an edge name is used more than twice")
    label = 0
    sig = {}
    ends: dict[str, list[int]] = {}
    root_label = None
    for rot in rotations:
        labs = list(range(label + 1, label + len(rot) + 1))
        label += len(rot)
        for i, h in enumerate(labs):
            sig[h] = labs[(i + 1) % len(labs)]
        for name, h in zip(rot, labs):
            ends.setdefault(name, []).append(h)
            if name == root:
                root_label = h
    alp = {}
    for hs in ends.values():
        if len(hs) == 2:
            alp[hs[0]], alp[hs[1]] = hs[1], hs[0]
        else:
            alp[hs[0]] = hs[0]
    G = RibbonGraph(Permutation(sig), Permutation(alp), root_label)
    return canonical_form(G) if canonical else G


def bare_vertex() -> RibbonGraph:
    return rotation_system([["w", "n", "e", "s"]], root="w")


def tadpole_up() -> RibbonGraph:
    return rotation_system([["w", "t", "t", "e"]], root="w")


def tadpole_down() -> RibbonGraph:
    return rotation_system([["w", "e", "t", "t"]], root="w")


def fish_horizontal() -> RibbonGraph:
    return rotation_system([["l1", "a", "b", "l2"], ["a", "l7", "l6", "b"]], root="l1")


def fish_vertical() -> RibbonGraph:
    return rotation_system([["nw", "ne", "r", "l"], ["l", "r", "se", "sw"]], root="nw")


def two_two_fish() -> RibbonGraph:
    """Fish whose legs sit on two boundaries (not in the Hopf algebra)."""
    return make_graph([(4, 3, 2, 1), (8, 7, 6, 5)], [(2, 5), (4, 7)])


def sunrise() -> RibbonGraph:
    return rotation_system([["w", "top", "mid", "bot"], ["top", "e", "bot", "mid"]], root="w")


def tadpole_uu() -> RibbonGraph:
    """Tadpole whose loop carries a second vertex with an outward loop."""
    return rotation_system([["w", "p", "q", "e"], ["p", "t", "t", "q"]], root="w")


def tadpole_ud() -> RibbonGraph:
    """Tadpole whose loop carries a second vertex with an inward loop."""
    return rotation_system([["w", "p", "q", "e"], ["p", "q", "t", "t"]], root="w")


def rainbow() -> RibbonGraph:
    """Two tadpoles joined by a propagator, one loop above and one below.

    Internal face ``n`` touches only the upper external face and ``m`` only
    the lower one.
    """
    return rotation_system([["w", "u", "u", "x"], ["x", "e", "d", "d"]], root="w")


def double_tadpole_stacked() -> RibbonGraph:
    """The up-down stacked double tadpole, i.e. :func:`tadpole_ud`."""
    return tadpole_ud()


def fish_chain_straight() -> RibbonGraph:
    return rotation_system(
        [["l1", "a", "b", "l2"], ["a", "c", "d", "b"], ["c", "l7", "l6", "d"]], root="l1")


def fish_chain_bent_right() -> RibbonGraph:
    return rotation_system(
        [["l1", "a", "b", "l2"], ["a", "l7", "r", "l"], ["l", "r", "l6", "b"]], root="l1")


def fish_chain_bent_left() -> RibbonGraph:
    return rotation_system(
        [["l1", "a", "r", "l"], ["l", "r", "b", "l2"], ["a", "l7", "l6", "b"]], root="l1")


def box_chain(m: int) -> RibbonGraph:
    """Member ``m`` of the primitive box-chain family.

    A ladder with top row ``t0..tm`` and bottom row ``b0..bm``, closed by
    the rungs at both ends, plus one centre vertex per square joined to its
    four corners.  Legs sit on the four outer corners.  For ``m = 1`` this is
    the crossed box with 5 vertices and 8 internal edges.
    """
    if m < 1:
        raise ValueError("m >= 1")
    rot = []
    for i in range(m + 1):
        # top corner t_i, clockwise starting west
        t = []
        if i == 0:
            t += ["leg_t0", f"t{i}-t{i+1}", f"c{i+1}-t{i}", f"t{i}-b{i}"]
        elif i == m:
            t += [f"t{i-1}-t{i}", "leg_tm", f"t{i}-b{i}", f"c{i}-t{i}"]
        else:
            t += [f"t{i-1}-t{i}", f"t{i}-t{i+1}", f"c{i+1}-t{i}", f"c{i}-t{i}"]
        rot.append(t)
        b = []
        if i == 0:
            b += ["leg_b0", f"t{i}-b{i}", f"c{i+1}-b{i}", f"b{i}-b{i+1}"]
        elif i == m:
            b += [f"b{i-1}-b{i}", f"c{i}-b{i}", f"t{i}-b{i}", "leg_bm"]
        else:
            b += [f"b{i-1}-b{i}", f"c{i}-b{i}", f"c{i+1}-b{i}", f"b{i}-b{i+1}"]
        rot.append(b)
    for i in range(1, m + 1):
        # centre c_i: clockwise from north-west corner
        rot.append([f"c{i}-t{i-1}", f"c{i}-t{i}", f"c{i}-b{i}", f"c{i}-b{i-1}"])
    return rotation_system(rot, root="leg_t0")


def genus_one_example() -> RibbonGraph:
    """A genus-1 graph with two boundaries of two legs each, V=5 and E=12.

    Its single internal face borders four edges on both sides.
    """
    return make_graph(
        [(1, 4, 3, 2), (5, 8, 7, 6), (9, 12, 11, 10), (13, 16, 15, 14), (17, 20, 19, 18)],
        [(1, 11), (2, 6), (3, 7), (4, 15), (9, 16), (10, 12), (13, 20), (14, 17)])
