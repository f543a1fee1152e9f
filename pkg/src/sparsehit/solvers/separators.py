"""Heuristic balanced separators and the separator-based scheme."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from ..exceptions import InvalidInputError
from ..graph import Graph, bfs_distances, connected_components
from ..patterns import PatternSet, enumerate_occurrences
from ..solution import Solution, certified
from .exact import DEFAULT_NODE_LIMIT, minimum_hitting_set


@dataclass(frozen=True)
class SeparatorResult:
    """A vertex set whose removal shatters the graph.

    Attributes
    ----------
    separator : frozenset
    component_sizes : list of int
        Sizes of the residual components, descending.
    method : str
    bound : int or None
        The size bound the components were required to meet.
    """

    separator: frozenset
    component_sizes: list
    method: str
    bound: int | None = None
    extra: dict = field(default_factory=dict)


def _components_without(g: Graph, verts: list[int], removed: set) -> list[list[int]]:
    return connected_components(g, [v for v in verts if v not in removed])


def _bfs_layers_in(g: Graph, source: int, allowed: set) -> list[list[int]]:
    dist = bfs_distances(g, source, allowed)
    layers: list[list[int]] = [[] for _ in range(max(dist.values()) + 1)]
    for v, d in dist.items():
        layers[d].append(v)
    return layers


def _largest_beyond(g: Graph, layers: list[list[int]]) -> list[int]:
    """``out[i]`` is the largest component of the levels after ``i``.

    Union-find over levels added from the deepest one up; linear overall.
    """
    parent: dict[int, int] = {}
    size: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    out = [0] * len(layers)
    largest = 0
    for i in range(len(layers) - 1, -1, -1):
        out[i] = largest
        for v in layers[i]:
            parent[v] = v
            size[v] = 1
        for v in layers[i]:
            for u in g.adj[v]:
                if u in parent:
                    a, b = find(u), find(v)
                    if a != b:
                        if size[a] < size[b]:
                            a, b = b, a
                        parent[b] = a
                        size[a] += size[b]
            largest = max(largest, size[find(v)])
    return out


def _sources(g: Graph, verts: list[int], allowed: set) -> list[int]:
    start = verts[0]
    d0 = bfs_distances(g, start, allowed)
    a = max(d0, key=lambda v: (d0[v], -v))
    da = bfs_distances(g, a, allowed)
    b = max(da, key=lambda v: (da[v], -v))
    db = bfs_distances(g, b, allowed)
    # A pseudo-center: minimizes the larger of the two sweep distances.
    center = min(verts, key=lambda v: (max(da[v], db[v]), v))
    hub = max(verts, key=lambda v: (len(g.adj[v]), -v))
    out = []
    for s in (a, center, hub, start):
        if s not in out:
            out.append(s)
    return out


def _refine(g: Graph, verts: list[int], sep: set, bound: int) -> set:
    """Move separator vertices back into components while sizes allow."""
    comp_of: dict[int, int] = {}
    size: dict[int, int] = {}
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cid, comp in enumerate(_components_without(g, verts, sep)):
        parent[cid] = cid
        size[cid] = len(comp)
        for v in comp:
            comp_of[v] = cid
    next_id = len(parent)
    for s in sorted(sep):
        roots = {find(comp_of[u]) for u in g.adj[s] if u in comp_of}
        total = 1 + sum(size[r] for r in roots)
        if total > bound:
            continue
        sep.discard(s)
        parent[next_id] = next_id
        size[next_id] = total
        for r in roots:
            parent[r] = next_id
        comp_of[s] = next_id
        next_id += 1
    return sep


def balanced_separator(g: Graph, vertices: Iterable[int] | None = None) -> SeparatorResult:
    """Separator leaving components of at most ``2n/3`` vertices.

    Tries every BFS level from a few sources (double-sweep periphery,
    pseudo-center, maximum-degree vertex) smallest level first, keeps the
    smallest passing level and then shrinks it by local refinement. Falls
    back to peeling maximum-degree vertices of the largest component.

    Parameters
    ----------
    g : Graph
    vertices : iterable of int, optional
        A connected vertex set of ``g``; defaults to all vertices.
    """
    verts = sorted(range(g.n) if vertices is None else set(vertices))
    if not verts:
        return SeparatorResult(frozenset(), [], "empty", 0)
    allowed = set(verts)
    n = len(verts)
    bound = (2 * n) // 3
    if n <= 2:
        sep = {verts[0]}
        rest = [len(c) for c in _components_without(g, verts, sep)]
        return SeparatorResult(frozenset(sep), sorted(rest, reverse=True), "trivial", bound)
    if len(bfs_distances(g, verts[0], allowed)) != n:
        raise InvalidInputError("balanced_separator expects a connected vertex set")
    best = None
    for src in _sources(g, verts, allowed):
        layers = _bfs_layers_in(g, src, allowed)
        prefix = [0]
        for layer in layers:
            prefix.append(prefix[-1] + len(layer))
        beyond = _largest_beyond(g, layers)
        order = sorted(range(len(layers)), key=lambda i: (len(layers[i]), abs(prefix[i] - (n - prefix[i + 1]))))
        for i in order:
            if best is not None and len(layers[i]) >= len(best):
                break
            # Levels below i stay connected through the source, so they form one component.
            if prefix[i] <= bound and beyond[i] <= bound:
                best = set(layers[i])
                break
    method = "bfs-level"
    if best is None:
        method = "peeling"
        best = set()
        while True:
            comps = _components_without(g, verts, best)
            big = max(comps, key=len, default=[])
            if len(big) <= bound:
                break
            bigset = set(big)
            best.add(max(big, key=lambda v: (sum(u in bigset for u in g.adj[v]), -v)))
    best = _refine(g, verts, set(best), bound)
    sizes = sorted((len(c) for c in _components_without(g, verts, best)), reverse=True)
    assert not sizes or sizes[0] <= bound
    return SeparatorResult(frozenset(best), sizes, method, bound)


def shatter_threshold(beta, c: int = 2) -> int:
    beta = Fraction(str(beta)) if not isinstance(beta, Fraction) else beta
    if beta <= 0:
        raise InvalidInputError("beta must be positive")
    return math.ceil((1 / beta) ** c)


def shatter_into_small_components(g: Graph, beta, c: int = 2,
                                  vertices: Iterable[int] | None = None) -> SeparatorResult:
    """Recursive balanced separation until every component is small.

    Each residual component has at most ``ceil((1/beta)^c)`` vertices
    (asserted).
    """
    threshold = shatter_threshold(beta, c)
    verts = list(range(g.n)) if vertices is None else sorted(set(vertices))
    queue = deque(connected_components(g, verts))
    sep: set[int] = set()
    calls = 0
    while queue:
        comp = queue.popleft()
        if len(comp) <= threshold:
            continue
        calls += 1
        res = balanced_separator(g, comp)
        sep |= res.separator
        queue.extend(_components_without(g, comp, res.separator))
    sizes = sorted((len(c) for c in _components_without(g, verts, sep)), reverse=True)
    if sizes and sizes[0] > threshold:
        raise AssertionError("component-size bound violated")
    return SeparatorResult(frozenset(sep), sizes, "recursive-bfs", threshold, {"separator_calls": calls})


def _solve_components(g: Graph, occ_sets, comps: list[list[int]], node_limit):
    label: dict[int, int] = {}
    for cid, comp in enumerate(comps):
        for v in comp:
            label[v] = cid
    grouped: dict[int, list] = {}
    for s in occ_sets:
        cids = {label.get(v, -1) for v in s}
        if len(cids) == 1 and -1 not in cids:
            grouped.setdefault(cids.pop(), []).append(s)
    chosen: list[int] = []
    sizes = []
    for cid in sorted(grouped):
        part = minimum_hitting_set(grouped[cid], node_limit=node_limit)
        chosen.extend(part)
        sizes.append(len(comps[cid]))
    return chosen, sizes


def scheme_beta(epsilon, max_degree: int, gamma: int) -> Fraction:
    """``epsilon / Delta^(2 gamma)`` with ``Delta^(2 gamma)`` taken as 1 when ``Delta <= 1``."""
    eps = Fraction(str(epsilon)) if not isinstance(epsilon, Fraction) else epsilon
    return eps / (max_degree ** (2 * gamma) if max_degree > 1 else 1)


def separator_scheme(g: Graph, fs: PatternSet, epsilon, beta=None, c: int = 2,
                     node_limit: int | None = DEFAULT_NODE_LIMIT) -> Solution:
    """Shatter the relevant part of the graph, then solve components exactly.

    Parameters
    ----------
    beta : rational, optional
        Overrides the analysis value ``epsilon / Delta^(2 gamma)`` (practical
        mode). The component-size threshold is ``ceil((1/beta)^c)``.

    Returns
    -------
    Solution
        Provenance records the separator size and whether the certificate
        ``|S_sep| <= epsilon * n' / Delta^(2 gamma)`` held.
    """
    if not fs.all_connected:
        raise InvalidInputError("separator_scheme requires connected patterns")
    eps = Fraction(str(epsilon)) if not isinstance(epsilon, Fraction) else epsilon
    occ = enumerate_occurrences(g, fs)
    relevant = sorted(occ.covered_vertices())
    sub, ids = g.induced_subgraph(relevant)
    delta_max = sub.max_degree
    power = delta_max ** (2 * fs.gamma) if delta_max > 1 else 1
    b = scheme_beta(eps, delta_max, fs.gamma) if beta is None else Fraction(str(beta))
    shattered = shatter_into_small_components(g, b, c, relevant)
    comps = _components_without(g, relevant, set(shattered.separator))
    chosen, sizes = _solve_components(g, occ.sets, comps, node_limit)
    n_rel = len(relevant)
    prov = {
        "solver": "separator", "epsilon": str(eps), "beta": str(b), "beta_override": beta is not None,
        "threshold": shattered.bound, "separator_size": len(shattered.separator), "relevant": n_rel,
        "max_degree": delta_max, "largest_component": max(sizes, default=0),
        "separator_certificate": len(shattered.separator) * power <= eps * n_rel,
    }
    return certified(g, fs, set(chosen) | shattered.separator, prov)
