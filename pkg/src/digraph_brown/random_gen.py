"""Seeded generators for small random digraphs, maps and decompositions."""
from __future__ import annotations

import random

from .digraph import Digraph, DigraphMap
from .homotopy import _MapSpace


def random_digraph(rng: random.Random, n_min: int = 3, n_max: int = 6,
                   probs: tuple[float, ...] = (0.3, 0.5), prefix: str = "v") -> Digraph:
    """Erdős–Rényi style digraph; each ordered pair is an edge with probability p."""
    n = rng.randint(n_min, n_max)
    p = rng.choice(probs)
    vs = [f"{prefix}{i}" for i in range(n)]
    es = {(u, v) for u in vs for v in vs if u != v and rng.random() < p}
    return Digraph(tuple(vs), frozenset(es))


def random_map(rng: random.Random, G: Digraph, H: Digraph) -> DigraphMap:
    """A random digraph map, built vertex by vertex with backtracking."""
    space = _MapSpace(G, H)
    order = [rng.sample(range(len(space.hv)), len(space.hv)) for _ in space.gv]
    t = next(space.maps(order))
    return space.decode(t)


def random_step(rng: random.Random, f: DigraphMap) -> tuple[DigraphMap, str] | None:
    """A uniformly chosen one-step neighbour of f (None if f is isolated)."""
    space = _MapSpace(f.domain, f.codomain)
    nbrs = list(space.neighbours(space.encode(f)))
    if not nbrs:
        return None
    t, orient = rng.choice(nbrs)
    return space.decode(t), orient


def random_decomposition(rng: random.Random, G: Digraph, p_shared: float = 0.2) -> tuple[Digraph, Digraph]:
    """Split G into two subdigraphs whose union is G.

    Edges are 2-coloured (occasionally shared); uncovered vertices land on a
    random side or both.
    """
    e1, e2 = set(), set()
    for e in sorted(G.edges):
        r = rng.random()
        if r < p_shared:
            e1.add(e)
            e2.add(e)
        elif r < (1 + p_shared) / 2:
            e1.add(e)
        else:
            e2.add(e)
    v1 = {x for e in e1 for x in e}
    v2 = {x for e in e2 for x in e}
    for v in G.vertices:
        r = rng.random()
        if v in v1 or v in v2:
            if r < 0.25:
                v1.add(v)
            elif r < 0.5:
                v2.add(v)
            continue
        if r < 0.4:
            v1.add(v)
        elif r < 0.8:
            v2.add(v)
        else:
            v1.add(v)
            v2.add(v)
    return Digraph(tuple(v1), frozenset(e1)), Digraph(tuple(v2), frozenset(e2))


def random_overlapping_pair(rng: random.Random, n_max: int = 6) -> tuple[Digraph, Digraph]:
    """Two digraphs sharing some labels, both taken from one ambient digraph."""
    amb = random_digraph(rng, 3, n_max)
    a, b = random_decomposition(rng, amb)
    return a, b
