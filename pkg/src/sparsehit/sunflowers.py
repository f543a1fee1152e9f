"""Sunflowers, heavy sets and representative families."""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx
import numpy as np
import scipy.sparse as sp
from scipy.optimize import Bounds, LinearConstraint, milp

from .exceptions import BudgetExceededError, InvalidInputError
from .patterns import OccurrenceIndex

DEFAULT_PACKING_NODES = 1_000_000


@dataclass(frozen=True)
class Sunflower:
    """Members (by id) pairwise intersecting exactly in ``core``."""

    member_ids: tuple
    core: frozenset

    def is_valid(self, family: Sequence) -> bool:
        sets = [frozenset(family[i]) for i in self.member_ids]
        if len(set(sets)) != len(sets):
            return False
        return all(a & b == self.core for a, b in itertools.combinations(sets, 2))


@dataclass(frozen=True)
class HeavySetReport:
    """Outcome of a heaviness test.

    Attributes
    ----------
    core : frozenset
    threshold : int
        ``delta * gamma ** len(core)``.
    heavy : bool
    max_packing : int
        Size of the disjoint petal packing found. Exact unless the greedy
        packing already reached the threshold (then a lower bound).
    witness : Sunflower or None
    """

    core: frozenset
    threshold: int
    heavy: bool
    max_packing: int
    witness: Sunflower | None = None


# -- disjoint packing ------------------------------------------------------
def _greedy_packing(sets: Sequence[frozenset]) -> list[int]:
    deg: dict[int, int] = defaultdict(int)
    for s in sets:
        for v in s:
            deg[v] += 1
    order = sorted(range(len(sets)), key=lambda i: (len(sets[i]), sum(deg[v] for v in sets[i]), i))
    used: set[int] = set()
    chosen = []
    for i in order:
        if used.isdisjoint(sets[i]):
            used |= sets[i]
            chosen.append(i)
    return chosen


def _greedy_transversal_size(sets: Sequence[frozenset]) -> int:
    """Size of a greedy hitting set; no packing is larger."""
    remaining = list(sets)
    count = 0
    while remaining:
        deg: dict[int, int] = defaultdict(int)
        for t in remaining:
            for v in t:
                deg[v] += 1
        x = max(deg, key=lambda v: (deg[v], -v))
        remaining = [t for t in remaining if x not in t]
        count += 1
    return count


def _drop_supersets(sets: list[frozenset]) -> list[frozenset]:
    """Keep inclusion-minimal members; swapping a set for a subset keeps a packing disjoint."""
    kept: set[frozenset] = set()
    out: list[frozenset] = []
    for t in sorted(set(sets), key=lambda t: (len(t), sorted(t))):
        items = sorted(t)
        if kept and any(frozenset(c) in kept for k in range(1, len(items))
                        for c in itertools.combinations(items, k)):
            continue
        kept.add(t)
        out.append(t)
    return out


def _set_components(sets: list[frozenset]) -> list[list[frozenset]]:
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t in sets:
        items = sorted(t)
        for v in items:
            parent.setdefault(v, v)
        for v in items[1:]:
            a, b = find(items[0]), find(v)
            if a != b:
                parent[a] = b
    groups: dict[int, list[frozenset]] = defaultdict(list)
    for t in sets:
        groups[find(min(t))].append(t)
    return [groups[k] for k in sorted(groups)]


def _matching_packing(sets: list[frozenset]) -> list[frozenset]:
    """Pairs only: a maximum packing is a maximum matching."""
    h = nx.Graph()
    h.add_edges_from(tuple(t) for t in sets)
    return [frozenset(e) for e in nx.max_weight_matching(h, maxcardinality=True)]


def _milp_packing(sets: list[frozenset], node_limit) -> list[frozenset]:
    """Exact maximum packing as a 0/1 program solved by HiGHS."""
    verts = sorted(set().union(*sets))
    row = {v: i for i, v in enumerate(verts)}
    rows, cols = [], []
    for j, t in enumerate(sets):
        for v in t:
            rows.append(row[v])
            cols.append(j)
    a = sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(verts), len(sets)))
    options = {} if node_limit is None else {"node_limit": int(node_limit)}
    res = milp(-np.ones(len(sets)), constraints=LinearConstraint(a, -np.inf, 1), integrality=np.ones(len(sets)),
               bounds=Bounds(0, 1), options=options)
    if res.status != 0 or res.x is None:
        raise BudgetExceededError(f"petal packing not solved to optimality: {res.message}")
    return [sets[j] for j in np.flatnonzero(res.x > 0.5)]


class _Packer:
    """Maximum family of pairwise disjoint sets.

    Cheap greedy and transversal bounds settle most calls; the rest go to
    an exact integer program.
    """

    def __init__(self, node_limit):
        self.node_limit = node_limit

    def maximum(self, sets: list[frozenset], goal: float = float("inf")) -> list[frozenset]:
        """Maximum packing, or any packing of size ``goal`` once found."""
        chosen: list[frozenset] = []
        for comp in _set_components(_drop_supersets(sets)):
            chosen += self._component(comp, goal - len(chosen))
            if len(chosen) >= goal:
                break
        return chosen

    def _component(self, sets: list[frozenset], goal) -> list[frozenset]:
        greedy = [sets[i] for i in _greedy_packing(sets)]
        if len(greedy) >= goal:
            return greedy
        volume = len(set().union(*sets)) // min(len(t) for t in sets)
        if len(greedy) >= min(volume, _greedy_transversal_size(sets)):
            return greedy
        if all(len(t) == 2 for t in sets):
            return _matching_packing(sets)
        return _milp_packing(sets, self.node_limit)


def _packing_ids(fam: list[frozenset], packing: list[frozenset]) -> list[int]:
    """Map chosen (possibly shrunk) sets back to distinct member indices."""
    out = []
    taken: set[int] = set()
    for t in packing:
        for i, s in enumerate(fam):
            if i not in taken and s == t:
                out.append(i)
                taken.add(i)
                break
    return out


def max_disjoint_packing(sets: Sequence[Iterable[int]], node_limit: int | None = DEFAULT_PACKING_NODES) -> list[int]:
    """Maximum number of pairwise disjoint sets, returned as sorted indices.

    At most one empty set is used (empty sets are disjoint from everything,
    but petals come from distinct members and only one can be empty).
    """
    fam = [frozenset(s) for s in sets]
    empties = [i for i, s in enumerate(fam) if not s]
    found = _packing_ids(fam, _Packer(node_limit).maximum([s for s in fam if s]))
    return sorted(found + empties[:1])


def has_disjoint_packing(sets: Sequence[frozenset], target: int,
                         node_limit: int | None = DEFAULT_PACKING_NODES) -> tuple[bool, list[int], bool]:
    """Decide whether ``target`` pairwise disjoint sets exist.

    Returns ``(decision, packing, exact)`` where ``packing`` is the best
    packing found and ``exact`` tells whether its size is the true maximum.
    """
    fam = [frozenset(s) for s in sets]
    empties = [i for i, s in enumerate(fam) if not s]
    extra = 1 if empties else 0
    nonempty = [s for s in fam if s]
    if len(nonempty) + extra < target:
        return False, sorted(_packing_ids(fam, [nonempty[i] for i in _greedy_packing(nonempty)]) + empties[:1]), False
    goal = target - extra
    packing = _packing_ids(fam, _Packer(node_limit).maximum(nonempty, goal)) + empties[:1]
    ok = len(packing) >= target
    return ok, sorted(packing), not ok


# -- sunflower search ------------------------------------------------------
def find_sunflower(family: Sequence[Iterable[int]], r: int, node_limit: int | None = DEFAULT_PACKING_NODES) -> Sunflower | None:
    """Return an ``r``-sunflower with lexicographically smallest member ids.

    Parameters
    ----------
    family : sequence of vertex sets
        Duplicate sets count once (members must be distinct sets).
    r : int
        Required number of members, at least 2.

    Returns
    -------
    Sunflower or None

    Examples
    --------
    >>> find_sunflower([{1, 2}, {1, 3}, {1, 4}], 3).core
    frozenset({1})
    """
    if r < 2:
        raise InvalidInputError("sunflower size must be at least 2")
    fam = [frozenset(s) for s in family]
    first_id: dict[frozenset, int] = {}
    for i, s in enumerate(fam):
        first_id.setdefault(s, i)
    distinct = sorted(first_id.values())
    packer_nodes = [0]

    for pos, i1 in enumerate(distinct):
        s1 = fam[i1]
        later = distinct[pos + 1:]
        best = None
        for size in range(len(s1) + 1):
            for core_t in itertools.combinations(sorted(s1), size):
                core = frozenset(core_t)
                petal1 = s1 - core
                cands = [j for j in later if fam[j] >= core and (fam[j] - core).isdisjoint(petal1)]
                if len(cands) < r - 1:
                    continue
                petals = [fam[j] - core for j in cands]
                ok, _, _ = has_disjoint_packing(petals, r - 1, node_limit)
                if not ok:
                    continue
                seq = _smallest_completion(fam, cands, core, petal1, r - 1, packer_nodes, node_limit)
                if seq is not None and (best is None or seq < best[0]):
                    best = (seq, core)
        if best is not None:
            sf = Sunflower((i1,) + tuple(best[0]), best[1])
            assert sf.is_valid(fam)
            return sf
    return None


def _smallest_completion(fam, cands, core, petal1, need, counter, node_limit):
    chosen: list[int] = []

    def dfs(start, used, empty_used):
        counter[0] += 1
        if node_limit is not None and counter[0] > node_limit:
            raise BudgetExceededError(f"sunflower search exceeded {node_limit} nodes")
        if len(chosen) == need:
            return True
        if len(cands) - start < need - len(chosen):
            return False
        for idx in range(start, len(cands)):
            j = cands[idx]
            petal = fam[j] - core
            if not petal:
                if empty_used:
                    continue
            elif not used.isdisjoint(petal):
                continue
            chosen.append(j)
            if dfs(idx + 1, used | petal, empty_used or not petal):
                return True
            chosen.pop()
        return False

    return list(chosen) if dfs(0, set(petal1), not petal1) else None


# -- heavy sets ------------------------------------------------------------
def heavy_threshold(core_size: int, delta: int, gamma: int) -> int:
    return delta * gamma ** core_size


def _family(occ) -> tuple[Sequence[frozenset], Sequence | None]:
    if isinstance(occ, OccurrenceIndex):
        return occ.sets, occ.by_vertex
    return [frozenset(s) for s in occ], None


def supporting_ids(core: frozenset, sets: Sequence[frozenset], by_vertex=None) -> list[int]:
    if by_vertex is not None and core:
        v = min(core, key=lambda x: len(by_vertex[x]))
        return [i for i in by_vertex[v] if core <= sets[i]]
    return [i for i, s in enumerate(sets) if core <= s]


def is_heavy(core: Iterable[int], occ, delta: int, gamma: int,
             node_limit: int | None = DEFAULT_PACKING_NODES) -> HeavySetReport:
    """Exact test whether ``core`` is the core of a ``delta*gamma^|core|``-sunflower.

    Parameters
    ----------
    core : vertex set
    occ : OccurrenceIndex or sequence of vertex sets
    delta, gamma : int

    Returns
    -------
    HeavySetReport
    """
    core = frozenset(core)
    if not core:
        raise InvalidInputError("heaviness is defined for nonempty cores only")
    sets, by_vertex = _family(occ)
    threshold = heavy_threshold(len(core), delta, gamma)
    ids = supporting_ids(core, sets, by_vertex)
    petals = [sets[i] - core for i in ids]
    ok, packing, _ = has_disjoint_packing(petals, threshold, node_limit)
    witness = Sunflower(tuple(sorted(ids[i] for i in packing)), core) if ok else None
    return HeavySetReport(core, threshold, ok, len(packing), witness)


def candidate_cores(sets: Sequence[frozenset]) -> dict[frozenset, list[int]]:
    """Every nonempty subset of a member, mapped to the members containing it."""
    out: dict[frozenset, list[int]] = defaultdict(list)
    for i, s in enumerate(sets):
        items = sorted(s)
        for size in range(1, len(items) + 1):
            for sub in itertools.combinations(items, size):
                out[frozenset(sub)].append(i)
    return out


def _heavy_from_candidates(sets, cands, delta, gamma, minimal_only, node_limit):
    found: list[frozenset] = []
    found_set: set[frozenset] = set()
    for core in sorted(cands, key=lambda c: (len(c), sorted(c))):
        if minimal_only and any(frozenset(sub) in found_set
                                for size in range(1, len(core))
                                for sub in itertools.combinations(sorted(core), size)):
            continue
        threshold = heavy_threshold(len(core), delta, gamma)
        ids = cands[core]
        if len(ids) < threshold:
            continue
        ok, _, _ = has_disjoint_packing([sets[i] - core for i in ids], threshold, node_limit)
        if ok:
            found.append(core)
            found_set.add(core)
    return sorted(found, key=lambda c: (len(c), sorted(c)))


def minimal_heavy_sets(occ, delta: int, gamma: int, node_limit: int | None = DEFAULT_PACKING_NODES) -> list[frozenset]:
    """Inclusion-minimal heavy sets, sorted by size then content."""
    sets, _ = _family(occ)
    return _heavy_from_candidates(sets, candidate_cores(sets), delta, gamma, True, node_limit)


def heavy_sets(occ, delta: int, gamma: int, node_limit: int | None = DEFAULT_PACKING_NODES) -> list[frozenset]:
    """All heavy sets."""
    sets, _ = _family(occ)
    return _heavy_from_candidates(sets, candidate_cores(sets), delta, gamma, False, node_limit)


# -- representative sets ---------------------------------------------------
def _small_hitting_set_avoiding(sets: Sequence[frozenset], forbidden: frozenset, q: int) -> frozenset | None:
    """Some A with |A| <= q, disjoint from ``forbidden``, meeting every set."""
    def rec(remaining, chosen):
        if not remaining:
            return frozenset(chosen)
        if len(chosen) == q:
            return None
        s = min(remaining, key=len)
        for v in sorted(s - forbidden):
            found = rec([t for t in remaining if v not in t], chosen + [v])
            if found is not None:
                return found
        return None

    return rec(list(sets), [])


def build_representative_set(family: Sequence[Iterable[int]], q: int) -> list[int]:
    """Greedy ``q``-representative sub-family, returned as member indices.

    A member is kept when some ``A`` of size at most ``q`` avoids it but
    meets every member kept so far. The kept sets with their witnesses form
    a skew Bollobás system, so at most ``C(k+q, k)`` members are kept.
    """
    if q < 0:
        raise InvalidInputError("q must be non-negative")
    fam = [frozenset(s) for s in family]
    kept: list[int] = []
    for i, s in enumerate(fam):
        if _small_hitting_set_avoiding([fam[j] for j in kept], s, q) is not None:
            kept.append(i)
    return kept


def is_representative(family: Sequence[Iterable[int]], sub: Sequence[int], q: int) -> bool:
    """Check the representative property exactly via small hitting sets."""
    fam = [frozenset(s) for s in family]
    chosen = [fam[j] for j in sub]
    return all(_small_hitting_set_avoiding(chosen, s, q) is None for s in fam)
