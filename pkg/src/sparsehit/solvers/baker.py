"""Baker-style layering with exact solving per piece."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..exceptions import InvalidInputError
from ..graph import Graph, bfs_distances, connected_components
from ..patterns import PatternSet, enumerate_occurrences
from ..solution import Solution, certified
from .exact import DEFAULT_NODE_LIMIT, minimum_hitting_set


@dataclass(frozen=True)
class Layering:
    """BFS layering of one connected component.

    Attributes
    ----------
    source : int
    layers : tuple of tuple of int
    labels : tuple of int
        ``labels[i] = floor(i / beta) mod alpha``.
    pieces : dict
        ``pieces[q]`` lists the maximal q-pieces as inclusive layer ranges.
    alpha, beta : int
    """

    source: int
    layers: tuple
    labels: tuple
    pieces: dict
    alpha: int
    beta: int

    def piece_vertices(self, q: int, k: int) -> list[int]:
        i, j = self.pieces[q][k]
        return sorted(v for layer in self.layers[i:j + 1] for v in layer)


def layer_labels(num_layers: int, alpha: int, beta: int) -> list[int]:
    return [(i // beta) % alpha for i in range(num_layers)]


def q_pieces(labels, q: int) -> list[tuple[int, int]]:
    """Maximal windows with no ``a, b, a`` label pattern for ``a != q``.

    A window is valid when every label other than ``q`` occupies a single
    contiguous run inside it.
    """
    n = len(labels)
    counts: dict[int, int] = {}
    left = 0
    lefts = []
    for j, a in enumerate(labels):
        if a != q and counts.get(a, 0) > 0 and labels[j - 1] != a:
            while counts.get(a, 0) > 0:
                counts[labels[left]] -= 1
                left += 1
        counts[a] = counts.get(a, 0) + 1
        lefts.append(left)
    return [(lefts[j], j) for j in range(n) if j == n - 1 or lefts[j + 1] > lefts[j]]


def build_layering(g: Graph, component, alpha: int, beta: int, source: int | None = None) -> Layering:
    comp = set(component)
    s = min(comp) if source is None else source
    dist = bfs_distances(g, s, comp)
    layers: list[list[int]] = [[] for _ in range(max(dist.values()) + 1)]
    for v, d in dist.items():
        layers[d].append(v)
    labels = layer_labels(len(layers), alpha, beta)
    pieces = {q: q_pieces(labels, q) for q in range(alpha)}
    return Layering(s, tuple(tuple(sorted(x)) for x in layers), tuple(labels), pieces, alpha, beta)


def baker_layering(g: Graph, fs: PatternSet, epsilon, node_limit: int | None = DEFAULT_NODE_LIMIT) -> Solution:
    """Layered scheme: ``alpha = ceil(1/epsilon)``, ``beta = gamma``.

    For every offset ``q`` each q-piece is solved exactly; the smallest
    union over ``q`` is kept, per connected component.
    """
    if not fs.all_connected:
        raise InvalidInputError("baker_layering requires connected patterns")
    eps = Fraction(str(epsilon)) if not isinstance(epsilon, Fraction) else epsilon
    alpha = math.ceil(1 / eps)
    beta = fs.gamma
    occ = enumerate_occurrences(g, fs)
    chosen: set[int] = set()
    piece_sizes = []
    offsets = []
    comps = connected_components(g)
    comp_of = {v: cid for cid, comp in enumerate(comps) for v in comp}
    grouped: dict[int, list] = {}
    for s in occ.sets:
        grouped.setdefault(comp_of[min(s)], []).append(s)
    for cid in sorted(grouped):
        comp, comp_occ = comps[cid], grouped[cid]
        lay = build_layering(g, comp, alpha, beta)
        depth = {v: i for i, layer in enumerate(lay.layers) for v in layer}
        spans = [(min(depth[v] for v in s), max(depth[v] for v in s), s) for s in comp_occ]
        best = None
        for q in range(alpha):
            s_q: set[int] = set()
            for i, j in lay.pieces[q]:
                inside = [s for lo, hi, s in spans if lo >= i and hi <= j]
                if inside:
                    s_q.update(minimum_hitting_set(inside, node_limit=node_limit))
                    piece_sizes.append(sum(len(x) for x in lay.layers[i:j + 1]))
            if best is None or len(s_q) < len(best[1]):
                best = (q, s_q)
        offsets.append(best[0])
        chosen |= best[1]
    prov = {"solver": "baker", "epsilon": str(eps), "alpha": alpha, "beta": beta,
            "chosen_offsets": offsets, "max_piece": max(piece_sizes, default=0)}
    return certified(g, fs, chosen, prov)
