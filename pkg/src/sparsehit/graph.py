"""Static undirected simple graphs and basic structural queries."""

from __future__ import annotations

import io
import os
from collections import deque
from typing import Hashable, Iterable, Sequence

from .exceptions import InvalidInputError


class Graph:
    """Immutable undirected simple graph on dense 0-based vertex ids.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of (int, int)
        Edge list. Duplicates are merged; self-loops are rejected.
    labels : sequence, optional
        External label per vertex. Defaults to the integer id.

    Attributes
    ----------
    n : int
    m : int
    adj : tuple of tuple of int
        Sorted neighbor lists.
    labels : tuple
    """

    __slots__ = ("n", "m", "adj", "labels", "_adjset")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels: Sequence | None = None):
        if n < 0:
            raise InvalidInputError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInputError(f"edge ({u}, {v}) has an unknown endpoint")
            if u == v:
                raise InvalidInputError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self._init(n, tuple(tuple(sorted(s)) for s in nbrs), labels)

    def _init(self, n, adj, labels):
        self.n = n
        self.adj = adj
        self.m = sum(len(a) for a in adj) // 2
        if labels is None:
            labels = range(n)
        labels = tuple(labels)
        if len(labels) != n:
            raise InvalidInputError("labels must have one entry per vertex")
        self.labels = labels
        self._adjset = None

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]], labels: Sequence | None = None) -> "Graph":
        """Build from neighbor lists, checking symmetry."""
        n = len(adj)
        edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
        g = cls(n, edges, labels)
        if any(len(set(adj[u])) != len(g.adj[u]) for u in range(n)):
            raise InvalidInputError("adjacency is not symmetric")
        return g

    @classmethod
    def _trusted(cls, adj: tuple, labels: tuple) -> "Graph":
        g = cls.__new__(cls)
        g._init(len(adj), adj, labels)
        return g

    # -- queries ---------------------------------------------------------
    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    @property
    def adjsets(self) -> tuple[frozenset, ...]:
        """Neighbor sets, built lazily for O(1) adjacency tests."""
        if self._adjset is None:
            self._adjset = tuple(frozenset(a) for a in self.adj)
        return self._adjset

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjsets[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, Graph) and self.adj == other.adj

    def __hash__(self):
        return hash(self.adj)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    # -- derived graphs --------------------------------------------------
    def induced_subgraph(self, keep: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Return ``G[keep]`` and the map from new ids to original ids.

        New ids follow ascending original id, so neighbor lists stay sorted.
        """
        ids = sorted(set(keep))
        if ids and not (0 <= ids[0] and ids[-1] < self.n):
            raise InvalidInputError("unknown vertex id in keep set")
        pos = {v: i for i, v in enumerate(ids)}
        adj = tuple(tuple(pos[u] for u in self.adj[v] if u in pos) for v in ids)
        return Graph._trusted(adj, tuple(self.labels[v] for v in ids)), tuple(ids)

    def remove_vertices(self, removed: Iterable[int]) -> "Graph":
        """Delete all edges incident to ``removed``, keeping vertex ids stable."""
        gone = set(removed)
        if not gone:
            return self
        adj = tuple(() if v in gone else tuple(u for u in self.adj[v] if u not in gone) for v in range(self.n))
        return Graph._trusted(adj, self.labels)

    def non_isolated(self) -> list[int]:
        return [v for v in range(self.n) if self.adj[v]]


# -- traversal -----------------------------------------------------------
def bfs_distances(g: Graph, source: int, allowed: set | frozenset | None = None,
                  max_depth: int | None = None) -> dict[int, int]:
    """Distances from ``source`` inside ``allowed`` (all vertices if None)."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        d = dist[v]
        if max_depth is not None and d >= max_depth:
            continue
        for u in g.adj[v]:
            if u not in dist and (allowed is None or u in allowed):
                dist[u] = d + 1
                queue.append(u)
    return dist


def bfs_layers(g: Graph, source: int, allowed=None) -> list[list[int]]:
    """BFS levels from ``source``; each level sorted ascending."""
    dist = bfs_distances(g, source, allowed)
    layers: list[list[int]] = [[] for _ in range(max(dist.values()) + 1)]
    for v, d in dist.items():
        layers[d].append(v)
    for layer in layers:
        layer.sort()
    return layers


def connected_components(g: Graph, vertices: Iterable[int] | None = None) -> list[list[int]]:
    """Components of ``G[vertices]``, each sorted, ordered by smallest vertex."""
    if vertices is None:
        allowed = None
        order = range(g.n)
    else:
        allowed = set(vertices)
        order = sorted(allowed)
    seen: set[int] = set()
    comps = []
    for s in order:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            v = stack.pop()
            for u in g.adj[v]:
                if u not in seen and (allowed is None or u in allowed):
                    seen.add(u)
                    comp.append(u)
                    stack.append(u)
        comp.sort()
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


def eccentricity(g: Graph, v: int, allowed=None) -> int:
    return max(bfs_distances(g, v, allowed).values())


def diameter(g: Graph, vertices: Iterable[int] | None = None) -> int:
    """Exact diameter of a connected vertex set by all-pairs BFS."""
    verts = list(range(g.n)) if vertices is None else list(vertices)
    allowed = None if vertices is None else set(verts)
    best = 0
    for v in verts:
        dist = bfs_distances(g, v, allowed)
        if len(dist) != len(verts):
            raise InvalidInputError("diameter requested for a disconnected vertex set")
        best = max(best, max(dist.values()))
    return best


# -- edge-list I/O -------------------------------------------------------
def parse_edge_list(text: str) -> Graph:
    """Parse the whitespace edge-list format.

    Each non-comment line holds ``u v``; a line with a single token declares
    an isolated vertex. Labels are arbitrary tokens and receive internal ids
    in order of first appearance.
    """
    ids: dict[str, int] = {}
    edges = []

    def vid(tok):
        if tok not in ids:
            ids[tok] = len(ids)
        return ids[tok]

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        if len(line) == 1:
            vid(line[0])
        elif len(line) == 2:
            u, v = vid(line[0]), vid(line[1])
            if u == v:
                raise InvalidInputError(f"line {lineno}: self-loop on {line[0]!r}")
            edges.append((u, v))
        else:
            raise InvalidInputError(f"line {lineno}: expected 'u v', got {raw.strip()!r}")
    labels = [None] * len(ids)
    for tok, i in ids.items():
        labels[i] = _maybe_int(tok)
    return Graph(len(ids), edges, labels)


def _maybe_int(tok: str) -> Hashable:
    try:
        return int(tok)
    except ValueError:
        return tok


def format_edge_list(g: Graph) -> str:
    """Serialize deterministically: edges by id, then isolated vertices."""
    out = io.StringIO()
    for u, v in g.edges():
        out.write(f"{g.labels[u]} {g.labels[v]}\n")
    for v in range(g.n):
        if not g.adj[v]:
            out.write(f"{g.labels[v]}\n")
    return out.getvalue()


def read_edge_list(path: str | os.PathLike) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g))
