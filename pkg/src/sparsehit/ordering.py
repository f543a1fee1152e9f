"""Vertex orderings, degeneracy and weak reachability."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Sequence

from .exceptions import InvalidInputError
from .graph import Graph


@dataclass(frozen=True)
class WeakReachability:
    """Per-vertex sets ``WR_r(G, sigma, v)``.

    Attributes
    ----------
    r : int
    sets : tuple of frozenset
        ``sets[v]`` holds every vertex reachable from ``v`` by a path of
        length at most ``r`` whose largest vertex under sigma is the endpoint.
    """

    r: int
    sets: tuple

    def __getitem__(self, v):
        return self.sets[v]

    @property
    def wcol(self) -> int:
        return max((len(s) for s in self.sets), default=0)


@dataclass(frozen=True)
class VertexOrdering:
    """A bijection between vertices and ranks, with cached wcol statistics.

    Attributes
    ----------
    rank : tuple of int
        ``rank[v]`` is the position of ``v`` (0 = smallest).
    r : int
        Radius the statistics were computed for.
    wcol_stats : tuple of int
        ``wcol_stats[i]`` equals ``wcol_i(G, sigma)`` for ``i <= r``.
    wr : WeakReachability or None
        The sets at radius ``r``.
    """

    rank: tuple
    r: int = 0
    wcol_stats: tuple = ()
    wr: WeakReachability | None = field(default=None, repr=False, compare=False)

    @property
    def order(self) -> list[int]:
        out = [0] * len(self.rank)
        for v, i in enumerate(self.rank):
            out[i] = v
        return out

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "VertexOrdering":
        if sorted(order) != list(range(len(order))):
            raise InvalidInputError("order must be a permutation of the vertex ids")
        rank = [-1] * len(order)
        for i, v in enumerate(order):
            rank[v] = i
        return cls(rank=tuple(rank))

    def wcol(self, i: int) -> int:
        return self.wcol_stats[i]


def degeneracy_ordering(g: Graph) -> tuple[VertexOrdering, int, list[list[int]]]:
    """Matula–Beck smallest-last ordering.

    Returns
    -------
    ordering : VertexOrdering
        Every vertex has at most ``d`` neighbors of smaller rank.
    d : int
        The degeneracy.
    back_edges : list of list of int
        ``back_edges[v]`` lists the neighbors of ``v`` ranked before it.
    """
    n = g.n
    orig = [len(a) for a in g.adj]
    deg = list(orig)
    # Ties on current degree go to the smaller original degree, so hubs are
    # peeled last and end up with few larger-ranked neighbors.
    heap = [(deg[v], orig[v], v) for v in range(n)]
    heapq.heapify(heap)
    removed = [False] * n
    removal = []
    d = 0
    while heap:
        k, _, v = heapq.heappop(heap)
        if removed[v] or k != deg[v]:
            continue
        d = max(d, k)
        removed[v] = True
        removal.append(v)
        for u in g.adj[v]:
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], orig[u], u))
    order = removal[::-1]
    ordering = VertexOrdering.from_order(order)
    rank = ordering.rank
    back = [[u for u in g.adj[v] if rank[u] < rank[v]] for v in range(n)]
    return ordering, d, back


def weak_reachability_sets(g: Graph, sigma: VertexOrdering | Sequence[int], r: int,
                           all_levels: bool = False):
    """Compute ``WR_r`` by the iterative rule.

    ``WR_i(v)`` is the set of ``x`` in the union of ``WR_{i-1}(u)`` over the
    closed neighborhood of ``v`` with ``x`` ranked at least ``v``.

    Parameters
    ----------
    sigma : VertexOrdering or sequence of ranks
    r : int
    all_levels : bool
        If True, return the list of WeakReachability objects for 0..r.
    """
    if r < 0:
        raise InvalidInputError("radius must be non-negative")
    rank = sigma.rank if isinstance(sigma, VertexOrdering) else tuple(sigma)
    n = g.n
    cur = [frozenset((v,)) for v in range(n)]
    levels = [WeakReachability(0, tuple(cur))]
    for i in range(1, r + 1):
        nxt = []
        for v in range(n):
            rv = rank[v]
            acc = set(cur[v])
            for u in g.adj[v]:
                for x in cur[u]:
                    if rank[x] >= rv:
                        acc.add(x)
            nxt.append(frozenset(acc))
        cur = nxt
        if all_levels:
            levels.append(WeakReachability(i, tuple(cur)))
    if all_levels:
        return levels
    return WeakReachability(r, tuple(cur))


def build_ordering(g: Graph, r: int) -> VertexOrdering:
    """Ordering with small measured ``wcol_r``.

    Uses the reversed degeneracy ordering as rank (each vertex has at most
    ``d`` neighbors ranked above it) and records exact ``wcol_i`` for every
    ``i <= r``. No approximation guarantee is claimed.
    """
    if r < 1:
        raise InvalidInputError("radius must be at least 1")
    degen, _, _ = degeneracy_ordering(g)
    rank = tuple(g.n - 1 - x for x in degen.rank)
    return ordering_with_stats(g, rank, r)


def ordering_with_stats(g: Graph, rank: Sequence[int], r: int) -> VertexOrdering:
    """Wrap explicit ranks and attach measured ``wcol_i`` for ``i <= r``."""
    levels = weak_reachability_sets(g, rank, r, all_levels=True)
    stats = tuple(level.wcol for level in levels)
    return VertexOrdering(rank=tuple(rank), r=r, wcol_stats=stats, wr=levels[-1])


def degeneracy(g: Graph) -> int:
    return degeneracy_ordering(g)[1]
