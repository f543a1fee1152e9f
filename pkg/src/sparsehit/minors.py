"""Shallow minors and the small-pattern expansion F'."""

from __future__ import annotations

import itertools
from typing import Iterable

from .exceptions import BudgetExceededError, InvalidInputError
from .graph import Graph, bfs_distances
from .patterns import Mode, Pattern, PatternSet, canonical_form

DEFAULT_EXPANSION_BUDGET = 100_000


def _radius_ok(g: Graph, branch: frozenset, d: int) -> bool:
    for c in branch:
        dist = bfs_distances(g, c, branch)
        if len(dist) == len(branch) and max(dist.values()) <= d:
            return True
    return False


def branch_set_candidates(g: Graph, d: int, max_ball: int = 18) -> list[frozenset]:
    """Every vertex set of ``g`` inducing a connected graph of radius at most ``d``."""
    found: set[frozenset] = set()
    for c in range(g.n):
        ball = sorted(v for v in bfs_distances(g, c, max_depth=d) if v != c)
        if len(ball) > max_ball:
            raise BudgetExceededError(f"radius-{d} ball around {c} has {len(ball) + 1} vertices")
        for k in range(len(ball) + 1):
            for extra in itertools.combinations(ball, k):
                b = frozenset((c,) + extra)
                if b not in found and _radius_ok(g, b, d):
                    found.add(b)
    return sorted(found, key=lambda b: (len(b), sorted(b)))


def shallow_minor_model(g: Graph, h: Graph, d: int, induced: bool = False) -> dict | None:
    """Search for a ``d``-shallow minor model of ``h`` in ``g``.

    Branch sets are disjoint, connected and of radius at most ``d``. Every
    edge of ``h`` needs an edge between the matching branch sets; with
    ``induced`` every non-edge of ``h`` forbids one.

    Returns
    -------
    dict or None
        Pattern vertex to branch set, or None when no model exists.
    """
    if d < 0:
        raise InvalidInputError("depth must be non-negative")
    if h.n > g.n:
        return None
    cands = branch_set_candidates(g, d)
    adjsets = g.adjsets
    nbhd = {b: frozenset(u for v in b for u in adjsets[v]) - b for b in cands}
    # Pattern vertices by decreasing degree keep early constraints tight.
    order = sorted(range(h.n), key=lambda x: (-len(h.adj[x]), x))
    hadj = h.adjsets
    chosen: dict[int, frozenset] = {}
    used: set[int] = set()

    def rec(i):
        if i == len(order):
            return True
        x = order[i]
        for b in cands:
            if used & b:
                continue
            ok = True
            for y, by in chosen.items():
                touch = not nbhd[b].isdisjoint(by)
                if y in hadj[x] and not touch:
                    ok = False
                    break
                if induced and y not in hadj[x] and touch:
                    ok = False
                    break
            if not ok:
                continue
            chosen[x] = b
            used.update(b)
            if rec(i + 1):
                return True
            del chosen[x]
            used.difference_update(b)
        return False

    return dict(chosen) if rec(0) else None


def contains_shallow_minor(g: Graph, h: Graph, d: int, induced: bool = False) -> bool:
    return shallow_minor_model(g, h, d, induced) is not None


def all_graphs(n: int) -> Iterable[Graph]:
    """One representative per isomorphism class of graphs on ``n`` vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    seen = set()
    for mask in range(1 << len(pairs)):
        g = Graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
        key = canonical_form(g)
        if key not in seen:
            seen.add(key)
            yield g


def shallow_minor_pattern_expansion(fs: PatternSet, d: int, size_cap: int,
                                    budget: int = DEFAULT_EXPANSION_BUDGET) -> PatternSet:
    """All graphs on at most ``size_cap`` vertices containing a pattern as
    an induced ``d``-shallow minor, up to isomorphism.

    The returned set keeps the mode of ``fs``.

    Raises
    ------
    InvalidInputError
        If ``size_cap`` exceeds ``(d+1) * gamma^2``.
    BudgetExceededError
        If the number of labeled candidate graphs exceeds ``budget``.
    """
    if d < 0:
        raise InvalidInputError("depth must be non-negative")
    gamma = fs.gamma
    if size_cap > (d + 1) * gamma * gamma:
        raise InvalidInputError(f"size cap {size_cap} exceeds (d+1)*gamma^2 = {(d + 1) * gamma * gamma}")
    smallest = min(p.size for p in fs)
    space = sum(2 ** (k * (k - 1) // 2) for k in range(smallest, size_cap + 1))
    if space > budget:
        raise BudgetExceededError(f"expansion needs {space} candidate graphs, budget is {budget}")
    out = []
    for k in range(smallest, size_cap + 1):
        for cand in all_graphs(k):
            for p in fs:
                if cand.m >= p.graph.m and contains_shallow_minor(cand, p.graph, d, induced=True):
                    out.append(Pattern(cand, f"{p.name or 'F'}~{len(out)}"))
                    break
    return PatternSet(tuple(out), Mode.coerce(fs.mode))
