"""Randomized ball carving into bounded-diameter pieces."""

from __future__ import annotations

import math
import random
from collections import deque
from fractions import Fraction
from typing import Iterable

from ..exceptions import InvalidInputError
from ..graph import Graph
from ..patterns import PatternSet, enumerate_occurrences
from ..solution import Solution, certified
from .exact import DEFAULT_NODE_LIMIT
from .separators import SeparatorResult, _components_without, _solve_components, scheme_beta


def ball_carving_partition(g: Graph, beta, seed: int = 0,
                           vertices: Iterable[int] | None = None) -> SeparatorResult:
    """Carve BFS balls of random radius in ``[R, 2R]``, ``R = ceil(1/beta)``.

    The layer just outside each ball goes into the separator, so every
    residual component is a ball of diameter at most ``4R``.
    """
    b = Fraction(str(beta)) if not isinstance(beta, Fraction) else beta
    if b <= 0:
        raise InvalidInputError("beta must be positive")
    r0 = math.ceil(1 / b)
    rng = random.Random(seed)
    remaining = set(range(g.n)) if vertices is None else set(vertices)
    verts = sorted(remaining)
    sep: set[int] = set()
    radii = []
    for center in verts:
        if center not in remaining:
            continue
        r = rng.randint(r0, 2 * r0)
        radii.append(r)
        dist = {center: 0}
        queue = deque([center])
        while queue:
            v = queue.popleft()
            if dist[v] > r:
                continue
            for u in g.adj[v]:
                if u in remaining and u not in dist:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        for v, d in dist.items():
            remaining.discard(v)
            if d == r + 1:
                sep.add(v)
    sizes = sorted((len(c) for c in _components_without(g, verts, sep)), reverse=True)
    return SeparatorResult(frozenset(sep), sizes, "ball-carving", 4 * r0,
                           {"seed": seed, "radius_base": r0, "balls": len(radii)})


def carve_exact(g: Graph, fs: PatternSet, epsilon, beta=None, seed: int = 0,
                node_limit: int | None = DEFAULT_NODE_LIMIT) -> Solution:
    """Ball carving on the relevant vertices, then exact solving per piece."""
    if not fs.all_connected:
        raise InvalidInputError("carve_exact requires connected patterns")
    eps = Fraction(str(epsilon)) if not isinstance(epsilon, Fraction) else epsilon
    occ = enumerate_occurrences(g, fs)
    relevant = sorted(occ.covered_vertices())
    sub, _ = g.induced_subgraph(relevant)
    b = scheme_beta(eps, sub.max_degree, fs.gamma) if beta is None else Fraction(str(beta))
    carved = ball_carving_partition(g, b, seed, relevant)
    comps = _components_without(g, relevant, set(carved.separator))
    chosen, sizes = _solve_components(g, occ.sets, comps, node_limit)
    prov = {"solver": "carve+exact", "epsilon": str(eps), "beta": str(b), "seed": seed,
            "separator_size": len(carved.separator), "largest_component": max(sizes, default=0)}
    return certified(g, fs, set(chosen) | carved.separator, prov)
