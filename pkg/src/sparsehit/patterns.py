"""Forbidden patterns and exhaustive occurrence enumeration."""

from __future__ import annotations

import enum
import itertools
import os
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .exceptions import BudgetExceededError, InvalidInputError
from .graph import Graph, connected_components, read_edge_list

DEFAULT_OCCURRENCE_BUDGET = 10**7


class Mode(str, enum.Enum):
    SUBGRAPH = "subgraph"
    INDUCED = "induced"

    @classmethod
    def coerce(cls, value) -> "Mode":
        if isinstance(value, Mode):
            return value
        key = str(value).lower()
        aliases = {"sub": cls.SUBGRAPH, "subgraph": cls.SUBGRAPH, "ind": cls.INDUCED, "induced": cls.INDUCED}
        if key not in aliases:
            raise InvalidInputError(f"unknown mode {value!r}")
        return aliases[key]


# -- small-graph isomorphism ---------------------------------------------
def canonical_form(g: Graph) -> tuple[int, int]:
    """Isomorphism-invariant key for small graphs.

    Maximizes the upper-triangle adjacency bitmask over all vertex orders
    that list vertices by non-increasing degree, permuting only within
    degree classes.
    """
    n = g.n
    by_deg: dict[int, list[int]] = {}
    for v in range(n):
        by_deg.setdefault(len(g.adj[v]), []).append(v)
    classes = [by_deg[d] for d in sorted(by_deg, reverse=True)]
    adjsets = g.adjsets
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    best = -1
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        order = [v for part in parts for v in part]
        code = 0
        for i, j in pairs:
            code <<= 1
            if order[j] in adjsets[order[i]]:
                code |= 1
        if code > best:
            best = code
    return (n, best)


def is_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.m != b.m:
        return False
    if sorted(len(x) for x in a.adj) != sorted(len(x) for x in b.adj):
        return False
    return canonical_form(a) == canonical_form(b)


# -- patterns --------------------------------------------------------------
@dataclass(frozen=True)
class Pattern:
    """A forbidden graph F.

    Attributes
    ----------
    graph : Graph
    name : str
    connected : bool
    """

    graph: Graph
    name: str = ""

    def __post_init__(self):
        if self.graph.n < 1:
            raise InvalidInputError("a pattern needs at least one vertex")

    @property
    def connected(self) -> bool:
        return len(connected_components(self.graph)) == 1

    @property
    def size(self) -> int:
        return self.graph.n

    def components(self) -> list[Graph]:
        return [self.graph.induced_subgraph(c)[0] for c in connected_components(self.graph)]

    def is_bipartite(self) -> bool:
        color = {}
        for s in range(self.graph.n):
            if s in color:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                v = stack.pop()
                for u in self.graph.adj[v]:
                    if u not in color:
                        color[u] = 1 - color[v]
                        stack.append(u)
                    elif color[u] == color[v]:
                        return False
        return True

    def __repr__(self):
        return f"Pattern({self.name or self.graph!r})"


@dataclass(frozen=True)
class PatternSet:
    """The forbidden family together with the matching mode.

    Attributes
    ----------
    patterns : tuple of Pattern
    mode : Mode
    """

    patterns: tuple
    mode: Mode = Mode.SUBGRAPH

    def __post_init__(self):
        if not self.patterns:
            raise InvalidInputError("pattern set must be nonempty")
        object.__setattr__(self, "patterns", tuple(self.patterns))
        object.__setattr__(self, "mode", Mode.coerce(self.mode))

    @property
    def gamma(self) -> int:
        return max(p.size for p in self.patterns)

    @property
    def all_connected(self) -> bool:
        return all(p.connected for p in self.patterns)

    @property
    def induced(self) -> bool:
        return self.mode is Mode.INDUCED

    def __len__(self):
        return len(self.patterns)

    def __iter__(self):
        return iter(self.patterns)

    @property
    def names(self) -> str:
        return ",".join(p.name or f"G{p.graph.n}" for p in self.patterns)


def _path(k):
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def _cycle(k):
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def _complete(k):
    return Graph(k, itertools.combinations(range(k), 2))


def _biclique(a, b):
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def _star(leaves):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


BUILTIN_PATTERNS = ("K2", "K3", "K4", "P3", "P4", "P5", "C4", "C5", "star3", "claw")

_NAME_RULES = [
    (re.compile(r"K(\d+)_(\d+)$"), lambda a, b: _biclique(int(a), int(b))),
    (re.compile(r"K(\d+)$"), lambda k: _complete(int(k))),
    (re.compile(r"P(\d+)$"), lambda k: _path(int(k))),
    (re.compile(r"C(\d+)$"), lambda k: _cycle(int(k))),
    (re.compile(r"star(\d+)$"), lambda k: _star(int(k))),
    (re.compile(r"claw$"), lambda: _star(3)),
]


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    edges = []
    offset = 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges())
        offset += h.n
    return Graph(offset, edges)


def named_graph(name: str) -> Graph:
    """Graph for a pattern name.

    Supports ``Kn``, ``Pn`` (n vertices), ``Cn``, ``Ka_b`` (biclique),
    ``starN`` (N leaves), ``claw`` and disjoint unions joined by ``+``.
    """
    parts = name.split("+")
    if len(parts) > 1:
        return disjoint_union([named_graph(p) for p in parts])
    for rx, build in _NAME_RULES:
        match = rx.match(name.strip())
        if match:
            return build(*match.groups())
    raise InvalidInputError(f"unknown pattern name {name!r}")


def pattern(spec: str | Graph, name: str | None = None) -> Pattern:
    """Make a Pattern from a name, an edge-list file path, or a Graph.

    User-facing patterns must have at least two vertices. Single-vertex
    components only arise internally from the connected-component expansion.
    """
    if isinstance(spec, Graph):
        p = Pattern(spec, name or "")
    elif os.path.exists(spec):
        p = Pattern(read_edge_list(spec), name or os.path.basename(spec))
    else:
        p = Pattern(named_graph(spec), name or spec)
    if p.size < 2:
        raise InvalidInputError("the single-vertex graph is not a valid pattern")
    return p


def pattern_set(specs: str | Iterable, mode="subgraph") -> PatternSet:
    """Build a PatternSet from a comma-separated string or an iterable."""
    if isinstance(specs, PatternSet):
        return specs
    if isinstance(specs, (str, Graph, Pattern)):
        specs = [s for s in specs.split(",") if s.strip()] if isinstance(specs, str) else [specs]
    pats = [s if isinstance(s, Pattern) else pattern(s.strip() if isinstance(s, str) else s) for s in specs]
    return PatternSet(tuple(pats), Mode.coerce(mode))


def conn_expansion(fs: PatternSet) -> list[PatternSet]:
    """All choices of one connected component per pattern.

    Each returned set is deduplicated up to isomorphism, and sets that are
    equal as isomorphism-class families are reported once.
    """
    choices = [p.components() for p in fs.patterns]
    out = []
    seen = set()
    for combo in itertools.product(*choices):
        members = {}
        for comp in combo:
            members.setdefault(canonical_form(comp), comp)
        key = frozenset(members)
        if key in seen:
            continue
        seen.add(key)
        pats = tuple(Pattern(h, _guess_name(h)) for h in members.values())
        out.append(PatternSet(pats, fs.mode))
    return out


def _guess_name(h: Graph) -> str:
    key = canonical_form(h)
    for name in BUILTIN_PATTERNS:
        ref = named_graph(name)
        if ref.n == h.n and canonical_form(ref) == key:
            return name
    return ""


# -- occurrences -----------------------------------------------------------
@dataclass(frozen=True)
class Occurrence:
    vertices: tuple
    pattern_index: int


class OccurrenceIndex:
    """Deduplicated occurrence family with a per-vertex index.

    Attributes
    ----------
    sets : tuple of frozenset
        Distinct occurrence vertex sets, sorted by their sorted tuples.
    pattern_index : tuple of int
        Smallest index of a pattern realized on each set.
    by_vertex : tuple of tuple of int
        Occurrence ids containing each vertex.
    """

    def __init__(self, n: int, found: dict):
        items = sorted((tuple(sorted(s)), i) for s, i in found.items())
        self.n = n
        self.sets = tuple(frozenset(t) for t, _ in items)
        self.pattern_index = tuple(i for _, i in items)
        by_vertex: list[list[int]] = [[] for _ in range(n)]
        for oid, (t, _) in enumerate(items):
            for v in t:
                by_vertex[v].append(oid)
        self.by_vertex = tuple(tuple(b) for b in by_vertex)

    @property
    def all(self) -> list[Occurrence]:
        return [Occurrence(tuple(sorted(s)), i) for s, i in zip(self.sets, self.pattern_index)]

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def restricted(self, keep: Iterable[int]) -> "OccurrenceIndex":
        """The sub-family of sets contained in ``keep``."""
        keep = set(keep)
        found = {s: i for s, i in zip(self.sets, self.pattern_index) if s <= keep}
        return OccurrenceIndex(self.n, found)

    def covered_vertices(self) -> set[int]:
        return {v for v in range(self.n) if self.by_vertex[v]}


class _Plan:
    """Matching order for one connected pattern graph."""

    def __init__(self, h: Graph, induced: bool):
        k = h.n
        start = max(range(k), key=lambda v: (len(h.adj[v]), -v))
        order = [start]
        placed = {start}
        while len(order) < k:
            nxt = max((v for v in range(k) if v not in placed),
                      key=lambda v: (sum(u in placed for u in h.adj[v]), len(h.adj[v]), -v))
            order.append(nxt)
            placed.add(nxt)
        pos = {v: i for i, v in enumerate(order)}
        self.k = k
        self.degree = [len(h.adj[v]) for v in order]
        self.adj_before = []
        self.nonadj_before = []
        for i, v in enumerate(order):
            before = [pos[u] for u in h.adj[v] if pos[u] < i]
            self.adj_before.append(before)
            self.nonadj_before.append([j for j in range(i) if j not in before] if induced else [])
        self.induced = induced
        if k > 1 and any(not self.adj_before[i] for i in range(1, k)):
            raise InvalidInputError("plan requires a connected pattern")


def _embeddings(g: Graph, plan: _Plan, anchors: Iterable[int]) -> Iterator[frozenset]:
    adj = g.adj
    adjset = g.adjsets
    k = plan.k
    need = plan.degree
    image = [0] * k
    used: set[int] = set()

    def extend(i):
        if i == k:
            yield frozenset(image)
            return
        before = plan.adj_before[i]
        for x in adj[image[before[0]]]:
            if x in used or len(adj[x]) < need[i]:
                continue
            ax = adjset[x]
            ok = True
            for j in before:
                if image[j] not in ax:
                    ok = False
                    break
            if ok:
                for j in plan.nonadj_before[i]:
                    if image[j] in ax:
                        ok = False
                        break
            if not ok:
                continue
            image[i] = x
            used.add(x)
            yield from extend(i + 1)
            used.discard(x)

    for a in anchors:
        if len(adj[a]) < need[0]:
            continue
        image[0] = a
        used.add(a)
        yield from extend(1)
        used.discard(a)


def _connected_occurrences(g: Graph, h: Graph, induced: bool, budget: int) -> set[frozenset]:
    plan = _Plan(h, induced)
    found: set[frozenset] = set()
    for s in _embeddings(g, plan, range(g.n)):
        found.add(s)
        if len(found) > budget:
            raise BudgetExceededError(f"more than {budget} occurrences; instance out of desk scale")
    return found


def _pattern_occurrences(g: Graph, h: Graph, induced: bool, budget: int) -> set[frozenset]:
    comps = [h.induced_subgraph(c)[0] for c in connected_components(h)]
    if len(comps) == 1:
        return _connected_occurrences(g, h, induced, budget)
    # Compose component occurrences; identical components share a list.
    cache: dict = {}
    lists = []
    for c in comps:
        key = canonical_form(c)
        if key not in cache:
            cache[key] = sorted(_connected_occurrences(g, c, induced, budget), key=sorted)
        lists.append(cache[key])
    lists.sort(key=len)
    partial: set[frozenset] = {frozenset()}
    adjset = g.adjsets
    for lst in lists:
        nxt: set[frozenset] = set()
        for base in partial:
            if induced:
                near = set(base)
                for v in base:
                    near |= adjset[v]
            else:
                near = base
            for w in lst:
                if near.isdisjoint(w):
                    nxt.add(base | w)
                    if len(nxt) > budget:
                        raise BudgetExceededError(f"more than {budget} occurrences; instance out of desk scale")
        partial = nxt
    return partial


def enumerate_occurrences(g: Graph, fs: PatternSet, budget: int = DEFAULT_OCCURRENCE_BUDGET) -> OccurrenceIndex:
    """Exhaustive deduplicated occurrence family of ``fs`` in ``g``.

    Raises
    ------
    BudgetExceededError
        If more than ``budget`` distinct occurrences exist.
    """
    found: dict[frozenset, int] = {}
    for idx, p in enumerate(fs.patterns):
        for s in _pattern_occurrences(g, p.graph, fs.induced, budget):
            if s not in found:
                found[s] = idx
        if len(found) > budget:
            raise BudgetExceededError(f"more than {budget} occurrences; instance out of desk scale")
    return OccurrenceIndex(g.n, found)


def find_occurrence(g: Graph, fs: PatternSet) -> frozenset | None:
    """Return some occurrence, or None if the graph is ``fs``-free."""
    for p in fs.patterns:
        if p.connected:
            for s in _embeddings(g, _Plan(p.graph, fs.induced), range(g.n)):
                return s
        else:
            found = _pattern_occurrences(g, p.graph, fs.induced, DEFAULT_OCCURRENCE_BUDGET)
            if found:
                return min(found, key=sorted)
    return None


def irrelevant_vertices(g: Graph, idx: OccurrenceIndex) -> set[int]:
    """Vertices contained in no occurrence."""
    return {v for v in range(g.n) if not idx.by_vertex[v]}
