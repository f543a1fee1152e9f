"""Deterministic instance generators."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .exceptions import InvalidInputError
from .graph import Graph

FAMILIES = ("grid", "unit-disk", "bounded-degree-random", "disjoint-cliques", "friendship",
            "segment-intersection", "erdos-renyi", "path", "cycle", "complete", "tree")

SEGMENT_GRID = 1 << 20


@dataclass(frozen=True)
class GeneratorSpec:
    """Instance family, size, family parameters and seed.

    ``n`` is the requested vertex count; ``grid`` accepts ``w``/``h`` in
    ``params`` and otherwise uses a near-square lattice with ``n`` vertices
    rounded to a full rectangle.
    """

    family: str
    n: int
    params: dict = field(default_factory=dict)
    seed: int = 0

    def to_dict(self) -> dict:
        return {"family": self.family, "n": self.n, "params": dict(self.params), "seed": self.seed}

    @classmethod
    def from_dict(cls, d: dict) -> "GeneratorSpec":
        extra = {k: v for k, v in d.items() if k not in ("family", "n", "params", "seed")}
        params = {**d.get("params", {}), **extra}
        return cls(d["family"], int(d["n"]), params, int(d.get("seed", 0)))


def grid_graph(w: int, h: int) -> Graph:
    edges = []
    for r in range(h):
        for c in range(w):
            v = r * w + c
            if c + 1 < w:
                edges.append((v, v + 1))
            if r + 1 < h:
                edges.append((v, v + w))
    return Graph(w * h, edges)


def _grid_dims(n: int, params: dict) -> tuple[int, int]:
    if "w" in params or "h" in params:
        w = int(params.get("w", 0) or math.ceil(n / int(params["h"])))
        h = int(params.get("h", 0) or math.ceil(n / w))
        return w, h
    w = max(1, math.isqrt(n))
    return w, math.ceil(n / w)


def unit_disk_graph(n: int, radius: float, seed: int = 0) -> tuple[Graph, np.ndarray]:
    """``n`` uniform points in the unit square; edge iff distance <= radius."""
    if radius < 0:
        raise InvalidInputError("radius must be non-negative")
    pts = np.random.default_rng(seed).random((n, 2))
    pairs = cKDTree(pts).query_pairs(float(radius), output_type="ndarray") if n > 1 else np.empty((0, 2), int)
    return Graph(n, map(tuple, pairs.tolist())), pts


def _orient(p, q, r) -> int:
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def _on_segment(p, q, r) -> bool:
    return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])


def segments_cross(a, b) -> bool:
    """Closed-segment intersection with exact integer orientation tests."""
    p1, p2 = a
    p3, p4 = b
    d1, d2 = _orient(p3, p4, p1), _orient(p3, p4, p2)
    d3, d4 = _orient(p1, p2, p3), _orient(p1, p2, p4)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    return ((d1 == 0 and _on_segment(p3, p4, p1)) or (d2 == 0 and _on_segment(p3, p4, p2))
            or (d3 == 0 and _on_segment(p1, p2, p3)) or (d4 == 0 and _on_segment(p1, p2, p4)))


def random_segments(n: int, length: float, seed: int = 0) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Segments with integer endpoints; ``length`` is a fraction of the box side."""
    rng = random.Random(seed)
    out = []
    span = max(1, int(length * SEGMENT_GRID))
    for _ in range(n):
        x, y = rng.randrange(SEGMENT_GRID), rng.randrange(SEGMENT_GRID)
        ang = rng.random() * 2 * math.pi
        out.append(((x, y), (x + round(span * math.cos(ang)), y + round(span * math.sin(ang)))))
    return out


def segment_intersection_graph(n: int, length: float, seed: int = 0) -> tuple[Graph, list]:
    segs = random_segments(n, length, seed)
    boxes = [(min(p[0], q[0]), max(p[0], q[0]), min(p[1], q[1]), max(p[1], q[1])) for p, q in segs]
    order = sorted(range(n), key=lambda i: boxes[i][0])
    edges = []
    # Sweep on x so only boxes overlapping in x are tested.
    active: list[int] = []
    for i in order:
        x0 = boxes[i][0]
        active = [j for j in active if boxes[j][1] >= x0]
        for j in active:
            if boxes[j][3] >= boxes[i][2] and boxes[i][3] >= boxes[j][2] and segments_cross(segs[i], segs[j]):
                edges.append((i, j))
        active.append(i)
    return Graph(n, edges), segs


def bounded_degree_random(n: int, max_degree: int, seed: int = 0) -> Graph:
    """Random graph with ``n * max_degree / 2`` edge attempts, degree-capped."""
    rng = random.Random(seed)
    deg = [0] * n
    edges = set()
    for _ in range(n * max_degree // 2 * 2):
        if n < 2:
            break
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v or deg[u] >= max_degree or deg[v] >= max_degree:
            continue
        e = (min(u, v), max(u, v))
        if e in edges:
            continue
        edges.add(e)
        deg[u] += 1
        deg[v] += 1
    return Graph(n, sorted(edges))


def erdos_renyi(n: int, p: float, seed: int = 0) -> Graph:
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < p
    return Graph(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def disjoint_cliques(n: int, size: int) -> Graph:
    edges = []
    for start in range(0, n, size):
        block = range(start, min(n, start + size))
        edges.extend((u, v) for u in block for v in block if u < v)
    return Graph(n, edges)


def friendship_graph(triangles: int) -> Graph:
    """Vertex 0 joined to ``triangles`` disjoint edges."""
    edges = []
    for t in range(triangles):
        a, b = 1 + 2 * t, 2 + 2 * t
        edges += [(0, a), (0, b), (a, b)]
    return Graph(1 + 2 * triangles, edges)


def random_tree(n: int, seed: int = 0) -> Graph:
    rng = random.Random(seed)
    return Graph(n, [(v, rng.randrange(v)) for v in range(1, n)])


def generate(spec: GeneratorSpec) -> Graph:
    """Build the graph described by ``spec``; deterministic in ``spec``."""
    if spec.n < 1:
        raise InvalidInputError("n must be at least 1")
    p, n, seed = spec.params, spec.n, spec.seed
    fam = spec.family
    try:
        if fam == "grid":
            return grid_graph(*_grid_dims(n, p))
        if fam == "unit-disk":
            return unit_disk_graph(n, float(p.get("radius", 1.5 / math.sqrt(n))), seed)[0]
        if fam == "bounded-degree-random":
            d = int(p.get("max_degree", 3))
            if d < 0:
                raise InvalidInputError("max_degree must be non-negative")
            return bounded_degree_random(n, d, seed)
        if fam == "disjoint-cliques":
            size = int(p.get("size", 4))
            if size < 1:
                raise InvalidInputError("clique size must be positive")
            return disjoint_cliques(n, size)
        if fam == "friendship":
            return friendship_graph(max(0, (n - 1) // 2))
        if fam == "segment-intersection":
            length = float(p.get("length", 1.5 / math.sqrt(n)))
            if length <= 0:
                raise InvalidInputError("segment length must be positive")
            return segment_intersection_graph(n, length, seed)[0]
        if fam == "erdos-renyi":
            prob = float(p.get("p", 0.2))
            if not 0 <= prob <= 1:
                raise InvalidInputError("p must lie in [0, 1]")
            return erdos_renyi(n, prob, seed)
        if fam == "path":
            return Graph(n, [(i, i + 1) for i in range(n - 1)])
        if fam == "cycle":
            if n < 3:
                raise InvalidInputError("a cycle needs at least 3 vertices")
            return Graph(n, [(i, (i + 1) % n) for i in range(n)])
        if fam == "complete":
            return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
        if fam == "tree":
            return random_tree(n, seed)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInputError):
            raise
        raise InvalidInputError(f"bad parameters for {fam}: {exc}") from None
    raise InvalidInputError(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")
