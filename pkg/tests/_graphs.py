"""Small graph helpers shared by several test modules."""

import random

from ribbonhopf.perm_core import Permutation
from ribbonhopf.ribbon import RibbonGraph


def relabel(G: RibbonGraph, seed: int) -> RibbonGraph:
    """Random bijective relabelling of the half-edges, root carried along."""
    rng = random.Random(seed)
    labels = list(G.half_edges)
    img = labels[:]
    rng.shuffle(img)
    f = dict(zip(labels, img))
    sig = {f[h]: f[G.sigma(h)] for h in labels}
    alp = {f[h]: f[G.alpha(h)] for h in labels}
    return RibbonGraph(Permutation(sig), Permutation(alp), f[G.root_half_edge])
