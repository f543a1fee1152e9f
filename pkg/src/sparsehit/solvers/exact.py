"""Exact minimum hitting set by branch and bound."""

from __future__ import annotations

import sys
from collections import defaultdict
from typing import Iterable, Sequence

from ..exceptions import BudgetExceededError
from ..graph import Graph
from ..patterns import PatternSet, enumerate_occurrences
from ..solution import Solution, certified

DEFAULT_NODE_LIMIT = 2_000_000


def greedy_hitting_set(sets: Sequence[frozenset]) -> list[int]:
    """Repeatedly take a vertex hitting the most remaining sets."""
    remaining = [s for s in sets]
    chosen = []
    while remaining:
        count: dict[int, int] = defaultdict(int)
        for s in remaining:
            for v in s:
                count[v] += 1
        v = max(count, key=lambda x: (count[x], -x))
        chosen.append(v)
        remaining = [s for s in remaining if v not in s]
    return chosen


def packing_lower_bound(sets: Sequence[frozenset]) -> int:
    """Lower bound on the hitting number.

    The larger of a greedy pairwise-disjoint packing (small sets with rare
    vertices first) and ``ceil(#sets / max vertex degree)``.
    """
    if not sets:
        return 0
    deg: dict[int, int] = defaultdict(int)
    for s in sets:
        for v in s:
            deg[v] += 1
    ordered = sorted(sets, key=lambda s: (len(s), sum(deg[v] for v in s), sorted(s)))
    used: set[int] = set()
    packed = 0
    for s in ordered:
        if used.isdisjoint(s):
            used |= s
            packed += 1
    maxdeg = max(deg.values())
    return max(packed, -(-len(sets) // maxdeg))


def _proper_subsets(s: frozenset):
    items = sorted(s)
    k = len(items)
    for mask in range(1, (1 << k) - 1):
        yield frozenset(items[i] for i in range(k) if mask >> i & 1)


def reduce_family(sets: Iterable[frozenset]) -> tuple[list[int], list[frozenset] | None]:
    """Apply the safe reductions until none fires.

    Returns the forced vertices and the reduced family, or ``None`` as the
    family when some set became empty (infeasible branch).

    Rules: singleton sets force their vertex; a set with a proper subset in
    the family is dropped; a vertex ``u`` whose sets all contain another
    vertex ``v`` of larger (degree, -id) is dropped from every set.
    """
    forced: list[int] = []
    fam = set(sets)
    while True:
        if frozenset() in fam:
            return forced, None
        singles = {next(iter(s)) for s in fam if len(s) == 1}
        if singles:
            forced.extend(sorted(singles))
            fam = {s for s in fam if singles.isdisjoint(s)}
            continue
        changed = False
        if len(fam) > 1:
            kept = set()
            for s in fam:
                if len(s) <= 12 and any(t in fam for t in _proper_subsets(s)):
                    changed = True
                    continue
                kept.add(s)
            fam = kept
        occ: dict[int, list[frozenset]] = defaultdict(list)
        for s in fam:
            for v in s:
                occ[v].append(s)
        drop = set()
        for u, lst in occ.items():
            common = set(lst[0])
            for s in lst[1:]:
                common &= s
                if len(common) == 1:
                    break
            common.discard(u)
            du = len(lst)
            for v in common:
                dv = len(occ[v])
                if dv > du or (dv == du and v < u):
                    drop.add(u)
                    break
        if drop:
            fam = {s - drop for s in fam}
            changed = True
        if not changed:
            return forced, sorted(fam, key=sorted)


def split_components(sets: list[frozenset]) -> list[list[frozenset]]:
    """Group sets into connected components of the shared-vertex relation."""
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in sets:
        it = iter(s)
        a = next(it)
        parent.setdefault(a, a)
        ra = find(a)
        for b in it:
            parent.setdefault(b, b)
            rb = find(b)
            if rb != ra:
                parent[rb] = ra
    groups: dict[int, list[frozenset]] = defaultdict(list)
    for s in sets:
        groups[find(next(iter(s)))].append(s)
    return sorted(groups.values(), key=lambda g: min(min(s) for s in g))


class _Search:
    def __init__(self, node_limit):
        self.node_limit = node_limit
        self.nodes = 0

    def solve(self, sets: list[frozenset], ub: int) -> list[int] | None:
        """Optimal hitting set of size < ub, or None if none exists."""
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise BudgetExceededError(f"exact search exceeded {self.node_limit} nodes")
        forced, fam = reduce_family(sets)
        if fam is None:
            return None
        k = len(forced)
        if k >= ub:
            return None
        if not fam:
            return forced
        comps = split_components(fam)
        if len(comps) > 1:
            lbs = [packing_lower_bound(c) for c in comps]
            if k + sum(lbs) >= ub:
                return None
            sol = list(forced)
            for i, comp in enumerate(comps):
                rest = sum(lbs[i + 1:])
                r = self.solve(comp, ub - len(sol) - rest)
                if r is None:
                    return None
                sol.extend(r)
            return sol
        if k + packing_lower_bound(fam) >= ub:
            return None
        deg: dict[int, int] = defaultdict(int)
        for s in fam:
            for v in s:
                deg[v] += 1
        pivot = min(fam, key=lambda s: (len(s), -sum(deg[v] for v in s), sorted(s)))
        best = None
        excluded: set[int] = set()
        for v in sorted(pivot, key=lambda x: (-deg[x], x)):
            sub = []
            feasible = True
            for s in fam:
                if v in s:
                    continue
                t = s - excluded if excluded else s
                if not t:
                    feasible = False
                    break
                sub.append(t)
            excluded.add(v)
            if not feasible:
                continue
            r = self.solve(sub, ub - k - 1)
            if r is not None:
                best = forced + [v] + r
                ub = len(best)
        return best


def minimum_hitting_set(sets: Iterable[Iterable[int]], budget: int | None = None,
                        node_limit: int | None = DEFAULT_NODE_LIMIT) -> list[int] | None:
    """Exact minimum hitting set of a set family.

    Parameters
    ----------
    sets : iterable of iterables
    budget : int, optional
        If given, return None when the optimum exceeds ``budget``.
    node_limit : int or None
        Search-node cap. Exceeding it raises :class:`BudgetExceededError`.

    Returns
    -------
    list of int or None
        A minimum hitting set sorted ascending, or None if the optimum
        exceeds ``budget``.
    """
    fam = [frozenset(s) for s in sets]
    greedy = greedy_hitting_set(fam)
    ub = len(greedy)
    if budget is not None and budget < ub:
        ub = budget + 1
        greedy = None
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 20000))
    try:
        found = _Search(node_limit).solve(fam, ub)
    finally:
        sys.setrecursionlimit(old)
    result = found if found is not None else greedy
    return None if result is None else sorted(result)


def exact_branching_solver(g: Graph, fs: PatternSet, budget: int | None = None,
                           node_limit: int | None = DEFAULT_NODE_LIMIT) -> Solution | None:
    """Exact minimum (induced) subgraph hitting set.

    Parameters
    ----------
    g : Graph
    fs : PatternSet
    budget : int, optional
        Solution-size budget. When the optimum exceeds it, None is returned.
    node_limit : int, optional
        Search-node cap; :class:`BudgetExceededError` when exhausted.

    Returns
    -------
    Solution or None

    Examples
    --------
    >>> from sparsehit.patterns import named_graph, pattern_set
    >>> exact_branching_solver(named_graph("K4"), pattern_set("K3")).opt
    2
    """
    occ = enumerate_occurrences(g, fs)
    s = minimum_hitting_set(occ.sets, budget=budget, node_limit=node_limit)
    if s is None:
        return None
    return certified(g, fs, s, {"solver": "exact", "budget": budget, "occurrences": len(occ)}, opt=len(s))
