"""k-clique and k-biclique decompositions and the wrapper schemes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exceptions import BudgetExceededError, InvalidInputError
from .graph import Graph
from .ordering import degeneracy_ordering
from .patterns import Pattern, PatternSet
from .solution import Solution, certified

DEFAULT_BICLIQUE_NODES = 5_000_000


@dataclass(frozen=True)
class CliqueDecomposition:
    """Partition into a ``K_k``-free part ``v0`` and ``k``-cliques."""

    v0: frozenset
    cliques: tuple
    k: int

    def to_dict(self) -> dict:
        return {"kind": "clique", "k": self.k, "v0": sorted(self.v0),
                "parts": sorted(sorted(c) for c in self.cliques)}


@dataclass(frozen=True)
class BicliqueDecomposition:
    """Partition into a ``K_{k,k}``-free part ``v0`` and spanning ``(k,k)``-bicliques."""

    v0: frozenset
    bicliques: tuple
    k: int

    def to_dict(self) -> dict:
        return {"kind": "biclique", "k": self.k, "v0": sorted(self.v0),
                "parts": sorted([sorted(a), sorted(b)] for a, b in self.bicliques)}


# -- clique search ---------------------------------------------------------
def find_clique(adjsets, candidates: Iterable[int], size: int) -> list[int] | None:
    """Some clique of ``size`` vertices inside ``candidates`` (DFS, ascending)."""
    if size == 0:
        return []
    cands = sorted(candidates)

    def rec(chosen, pool):
        if len(chosen) == size:
            return list(chosen)
        if len(chosen) + len(pool) < size:
            return None
        for i, v in enumerate(pool):
            if len(chosen) + len(pool) - i < size:
                return None
            nxt = [u for u in pool[i + 1:] if u in adjsets[v]]
            found = rec(chosen + [v], nxt)
            if found is not None:
                return found
        return None

    return rec([], cands)


def _degeneracy_clique_insert(adjsets, order: Sequence[int], k: int):
    """Insert vertices in ``order``; attach a ``(k-1)``-clique of earlier V0 neighbors."""
    pos = {v: i for i, v in enumerate(order)}
    v0: set[int] = set()
    cliques = []
    for v in order:
        back = [u for u in adjsets[v] if u in v0 and pos[u] < pos[v]]
        clique = find_clique(adjsets, back, k - 1) if len(back) >= k - 1 else None
        if clique is None:
            v0.add(v)
        else:
            v0.difference_update(clique)
            cliques.append(tuple(sorted(clique + [v])))
    return v0, cliques


def k_clique_decomposition_degeneracy(g: Graph, k: int) -> CliqueDecomposition:
    """Incremental insertion along a degeneracy ordering.

    Each vertex only inspects its at most ``d`` earlier neighbors still in
    ``v0`` for a ``(k-1)``-clique, so the search is ``2^O(d)`` per vertex.
    """
    if k < 1:
        raise InvalidInputError("k must be at least 1")
    ordering, _, _ = degeneracy_ordering(g)
    v0, cliques = _degeneracy_clique_insert(g.adjsets, ordering.order, k)
    return CliqueDecomposition(frozenset(v0), tuple(cliques), k)


class _LCA:
    """Binary-lifting lowest common ancestor over an explicit tree."""

    def __init__(self, parent: list[int], depth: list[int]):
        n = len(parent)
        levels = max(1, (max(depth) + 1).bit_length())
        up = [list(parent)]
        for _ in range(1, levels):
            prev = up[-1]
            up.append([prev[prev[v]] for v in range(n)])
        self.up = up
        self.depth = depth

    def query(self, a: int, b: int) -> int:
        if self.depth[a] < self.depth[b]:
            a, b = b, a
        diff = self.depth[a] - self.depth[b]
        for j, row in enumerate(self.up):
            if diff >> j & 1:
                a = row[a]
        if a == b:
            return a
        for row in reversed(self.up):
            if row[a] != row[b]:
                a, b = row[a], row[b]
        return self.up[0][a]


def k_clique_decomposition_divide_conquer(g: Graph, k: int) -> CliqueDecomposition:
    """Split vertices in halves, recurse, and re-decompose the merged ``v0``.

    Every edge is stored at the lowest common ancestor of its endpoints'
    leaves in the recursion tree, so a merge step sees exactly the edges
    that cross its two halves plus the surviving ``v0`` edges of its
    children.
    """
    if k < 1:
        raise InvalidInputError("k must be at least 1")
    n = g.n
    if n == 0:
        return CliqueDecomposition(frozenset(), (), k)
    # Build the recursion tree over index ranges.
    nodes: list[tuple[int, int]] = []
    parent: list[int] = []
    depth: list[int] = []
    children: list[tuple[int, int] | None] = []
    leaf_of = [0] * n
    stack = [(0, n, -1, 0)]
    while stack:
        lo, hi, par, dep = stack.pop()
        nid = len(nodes)
        nodes.append((lo, hi))
        parent.append(nid if par < 0 else par)
        depth.append(dep)
        children.append(None)
        if par >= 0:
            left, right = children[par] or (None, None)
            children[par] = (nid, right) if left is None else (left, nid)
        if hi - lo == 1:
            leaf_of[lo] = nid
        else:
            mid = (lo + hi) // 2
            # Push right first so the left child gets the smaller id.
            stack.append((mid, hi, nid, dep + 1))
            stack.append((lo, mid, nid, dep + 1))
    lca = _LCA(parent, depth)
    stored: dict[int, list[tuple[int, int]]] = {}
    for u, v in g.edges():
        stored.setdefault(lca.query(leaf_of[u], leaf_of[v]), []).append((u, v))

    cliques: list[tuple] = []

    def solve(nid):
        lo, hi = nodes[nid]
        if hi - lo == 1:
            if k == 1:
                cliques.append((lo,))
                return [], []
            return [lo], []
        left, right = children[nid]
        v0a, ea = solve(left)
        v0b, eb = solve(right)
        w = set(v0a) | set(v0b)
        edges = ea + eb + [(u, v) for u, v in stored.get(nid, []) if u in w and v in w]
        adj: dict[int, set] = {x: set() for x in w}
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        order = _local_degeneracy_order(sorted(w), adj)
        v0, found = _degeneracy_clique_insert(adj, order, k)
        cliques.extend(found)
        return sorted(v0), [(u, v) for u, v in edges if u in v0 and v in v0]

    v0, _ = solve(0)
    return CliqueDecomposition(frozenset(v0), tuple(cliques), k)


def _local_degeneracy_order(verts: list[int], adj: dict[int, set]) -> list[int]:
    ids = {v: i for i, v in enumerate(verts)}
    sub = Graph(len(verts), [(ids[u], ids[v]) for u in verts for v in adj[u] if u < v])
    ordering, _, _ = degeneracy_ordering(sub)
    return [verts[i] for i in ordering.order]


# -- biclique search -------------------------------------------------------
def find_biclique_with(adjsets, pool: set, v: int, k: int, node_limit: int | None = DEFAULT_BICLIQUE_NODES,
                       counter: list | None = None) -> tuple[list[int], list[int]] | None:
    """A ``K_{k,k}`` inside ``pool | {v}`` with ``v`` on side A.

    Side B grows inside ``N(v) & pool``; the vertices adjacent to all of B
    are the candidates for the rest of side A.
    """
    counter = counter if counter is not None else [0]
    cand_b = sorted(u for u in adjsets[v] if u in pool)
    if len(cand_b) < k:
        return None

    def rec(chosen, start, common):
        counter[0] += 1
        if node_limit is not None and counter[0] > node_limit:
            raise BudgetExceededError(f"biclique search exceeded {node_limit} nodes")
        if common is not None:
            free = common.difference(chosen)
            if len(free) < k - 1:
                return None
            if len(chosen) == k:
                return sorted([v] + sorted(free)[:k - 1]), sorted(chosen)
        for i in range(start, len(cand_b)):
            if len(chosen) + len(cand_b) - i < k:
                return None
            b = cand_b[i]
            if common is None:
                nxt = {u for u in adjsets[b] if u in pool and u != v}
            else:
                nxt = common & adjsets[b]
            found = rec(chosen + [b], i + 1, nxt)
            if found is not None:
                return found
        return None

    if k == 0:
        return [v], []
    return rec([], 0, None)


def k_biclique_decomposition(g: Graph, k: int, node_limit: int | None = DEFAULT_BICLIQUE_NODES) -> BicliqueDecomposition:
    """Insert vertices by id; move any ``K_{k,k}`` through the new vertex out of ``v0``."""
    if k < 1:
        raise InvalidInputError("k must be at least 1")
    adjsets = g.adjsets
    v0: set[int] = set()
    parts = []
    counter = [0]
    for v in range(g.n):
        found = find_biclique_with(adjsets, v0, v, k, node_limit, counter)
        if found is None:
            v0.add(v)
        else:
            a, b = found
            v0.difference_update(a)
            v0.difference_update(b)
            parts.append((tuple(a), tuple(b)))
    return BicliqueDecomposition(frozenset(v0), tuple(parts), k)


# -- audits ----------------------------------------------------------------
def audit_clique_decomposition(g: Graph, dec: CliqueDecomposition) -> list[str]:
    """Problems found (empty when valid): partition, clique parts, ``v0`` free of ``K_k``."""
    problems = []
    seen = list(dec.v0)
    for c in dec.cliques:
        seen.extend(c)
        if len(c) != dec.k:
            problems.append(f"part {c} has size {len(c)}")
        if any(b not in g.adjsets[a] for i, a in enumerate(c) for b in c[i + 1:]):
            problems.append(f"part {c} is not a clique")
    if sorted(seen) != list(range(g.n)):
        problems.append("parts do not partition the vertex set")
    if find_clique(g.adjsets, dec.v0, dec.k) is not None:
        problems.append("v0 contains a k-clique")
    return problems


def audit_biclique_decomposition(g: Graph, dec: BicliqueDecomposition) -> list[str]:
    """Problems found (empty when valid): partition, spanning bicliques, ``v0`` free of ``K_{k,k}``."""
    problems = []
    seen = list(dec.v0)
    for a, b in dec.bicliques:
        seen.extend(a)
        seen.extend(b)
        if len(a) != dec.k or len(b) != dec.k:
            problems.append(f"part {a}|{b} has wrong side sizes")
        if any(y not in g.adjsets[x] for x in a for y in b):
            problems.append(f"part {a}|{b} misses a cross edge")
    if sorted(seen) != list(range(g.n)):
        problems.append("parts do not partition the vertex set")
    pool = set(dec.v0)
    if any(find_biclique_with(g.adjsets, pool, v, dec.k, None) is not None for v in sorted(pool)):
        problems.append("v0 contains a (k,k)-biclique")
    return problems


# -- wrappers --------------------------------------------------------------
def _eps(epsilon) -> Fraction:
    eps = epsilon if isinstance(epsilon, Fraction) else Fraction(str(epsilon))
    if eps <= 0:
        raise InvalidInputError("epsilon must be positive")
    return eps


def clique_wrapper_k(epsilon, gamma: int) -> int:
    """``ceil((1+e)/e * (gamma-1))``, at least 1."""
    eps = _eps(epsilon)
    return max(1, math.ceil((1 + eps) / eps * (gamma - 1)))


def biclique_wrapper_k(epsilon, gamma: int) -> int:
    """``ceil((2+e)/e * (gamma-1))``, at least 1."""
    eps = _eps(epsilon)
    return max(1, math.ceil((2 + eps) / eps * (gamma - 1)))


def _solve_on_v0(g: Graph, fs: PatternSet, v0, eps, inner) -> tuple[set[int], dict]:
    from .reduction import _resolve

    sub, ids = g.induced_subgraph(v0)
    if sub.n == 0:
        return set(), {"solver": "empty"}
    sol = _resolve(inner)(sub, fs, eps)
    return {ids[v] for v in sol.vertices}, sol.provenance


def clique_wrapper_hitting(g: Graph, fs: PatternSet, epsilon, inner="exact", method: str = "degeneracy") -> Solution:
    """Take every clique part of a k-clique decomposition, solve the rest.

    Subgraph mode only: for induced patterns, deleting a whole clique is not
    charged against the optimum.
    """
    if fs.induced:
        raise InvalidInputError("the clique wrapper does not apply to induced patterns")
    eps = _eps(epsilon)
    k = clique_wrapper_k(eps, fs.gamma)
    decompose = k_clique_decomposition_divide_conquer if method == "divide-conquer" else k_clique_decomposition_degeneracy
    dec = decompose(g, k)
    s0, inner_prov = _solve_on_v0(g, fs, dec.v0, eps, inner)
    parts = {v for c in dec.cliques for v in c}
    prov = {"solver": "clique", "epsilon": str(eps), "k": k, "parts": len(dec.cliques),
            "v0": len(dec.v0), "inner": inner_prov}
    return certified(g, fs, s0 | parts, prov)


def choose_bipartite_pattern(fs: PatternSet) -> Pattern:
    bip = [p for p in fs.patterns if p.is_bipartite()]
    if not bip:
        raise InvalidInputError("the biclique wrapper needs a bipartite pattern")
    return min(bip, key=lambda p: p.size)


def biclique_wrapper_hitting(g: Graph, fs: PatternSet, epsilon, inner="exact") -> Solution:
    """Take every biclique part of a k-biclique decomposition, solve the rest.

    ``gamma`` is the order of the smallest bipartite pattern.
    """
    if fs.induced:
        raise InvalidInputError("the biclique wrapper does not apply to induced patterns")
    eps = _eps(epsilon)
    gamma = choose_bipartite_pattern(fs).size
    k = biclique_wrapper_k(eps, gamma)
    dec = k_biclique_decomposition(g, k)
    s0, inner_prov = _solve_on_v0(g, fs, dec.v0, eps, inner)
    parts = {v for a, b in dec.bicliques for v in a + b}
    prov = {"solver": "biclique", "epsilon": str(eps), "k": k, "gamma": gamma,
            "parts": len(dec.bicliques), "v0": len(dec.v0), "inner": inner_prov}
    return certified(g, fs, s0 | parts, prov)


# -- robust subgraph isomorphism -------------------------------------------
def find_embedding(g: Graph, h: Graph, vertices: Iterable[int] | None = None) -> dict | None:
    """Some injective map ``h -> g`` preserving edges (not necessarily induced)."""
    allowed = set(range(g.n)) if vertices is None else set(vertices)
    order = sorted(range(h.n), key=lambda x: -len(h.adj[x]))
    placed: list[int] = []
    for _ in range(h.n):
        rest = [x for x in order if x not in placed]
        nxt = max(rest, key=lambda x: (sum(u in placed for u in h.adj[x]), len(h.adj[x]), -x))
        placed.append(nxt)
    image: dict[int, int] = {}
    used: set[int] = set()
    adjsets = g.adjsets

    def rec(i):
        if i == len(placed):
            return True
        x = placed[i]
        earlier = [image[u] for u in h.adj[x] if u in image]
        pool = adjsets[earlier[0]] if earlier else allowed
        for y in sorted(pool):
            if y in used or y not in allowed or len(g.adj[y]) < len(h.adj[x]):
                continue
            if all(z in adjsets[y] for z in earlier):
                image[x] = y
                used.add(y)
                if rec(i + 1):
                    return True
                used.discard(y)
                del image[x]
        return False

    return dict(image) if rec(0) else None


def k_subgraph_isomorphism(g: Graph, h, k: int) -> dict | None:
    """Embed ``h`` (at most ``k`` vertices) into ``g``.

    If the k-clique decomposition has a clique part, ``h`` maps into it
    directly; otherwise the whole graph has clique number below ``k`` and a
    backtracking search runs on it.
    """
    hg = h.graph if isinstance(h, Pattern) else h
    if hg.n > k:
        raise InvalidInputError("pattern has more than k vertices")
    dec = k_clique_decomposition_degeneracy(g, k)
    if dec.cliques:
        clique = sorted(dec.cliques[0])
        return {x: clique[x] for x in range(hg.n)}
    return find_embedding(g, hg)
