"""Input coercion for the estimator and CLI layers."""

from __future__ import annotations

import os
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from .exceptions import InvalidInputError
from .graph import Graph, read_edge_list
from .patterns import Pattern, PatternSet, pattern, pattern_set


def check_graph(g) -> Graph:
    """Coerce ``g`` to a :class:`Graph`.

    Accepts a Graph, a networkx-like object (``nodes`` and ``edges``), a
    square numpy or scipy adjacency matrix, an edge-list file path, or an
    iterable of ``(u, v)`` pairs with arbitrary hashable endpoints.
    """
    if isinstance(g, Graph):
        return g
    if isinstance(g, (str, os.PathLike)):
        return read_edge_list(g)
    if hasattr(g, "nodes") and hasattr(g, "edges") and not isinstance(g, np.ndarray):
        if g.is_directed() if hasattr(g, "is_directed") else False:
            raise InvalidInputError("directed graphs are not supported")
        labels = list(g.nodes)
        index = {x: i for i, x in enumerate(labels)}
        edges = [(index[u], index[v]) for u, v in g.edges() if u != v]
        return Graph(len(labels), edges, labels)
    if sp.issparse(g) or isinstance(g, np.ndarray):
        return _from_matrix(g)
    try:
        pairs = [tuple(e) for e in g]
    except TypeError:
        raise InvalidInputError(f"cannot interpret {type(g).__name__} as a graph") from None
    if any(len(p) != 2 for p in pairs):
        raise InvalidInputError("edge list entries must be pairs")
    labels: list = []
    index: dict = {}
    for u, v in pairs:
        for x in (u, v):
            if x not in index:
                index[x] = len(labels)
                labels.append(x)
    try:
        labels_sorted = sorted(labels)
    except TypeError:
        labels_sorted = labels
    index = {x: i for i, x in enumerate(labels_sorted)}
    return Graph(len(labels_sorted), [(index[u], index[v]) for u, v in pairs], labels_sorted)


def _from_matrix(a) -> Graph:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInputError("adjacency matrix must be square")
    coo = sp.coo_matrix(a)
    mask = coo.data != 0
    rows, cols = coo.row[mask], coo.col[mask]
    if np.any(rows == cols):
        raise InvalidInputError("adjacency matrix has self-loops")
    pairs = set(zip(rows.tolist(), cols.tolist()))
    if any((v, u) not in pairs for u, v in pairs):
        raise InvalidInputError("adjacency matrix must be symmetric")
    return Graph(a.shape[0], [(u, v) for u, v in pairs if u < v])


def check_patterns(fs, mode="subgraph") -> PatternSet:
    """Coerce ``fs`` to a :class:`PatternSet`.

    Accepts a PatternSet (its own mode wins), a comma-separated string of
    built-in names, or an iterable of names, Graphs and Patterns.
    """
    if isinstance(fs, PatternSet):
        return fs
    if isinstance(fs, (Pattern, Graph)):
        fs = [fs]
    if isinstance(fs, str):
        return pattern_set(fs, mode)
    items = []
    for p in fs:
        if isinstance(p, Pattern):
            items.append(p)
        elif isinstance(p, (str, Graph)):
            items.append(pattern(p))
        else:
            items.append(pattern(check_graph(p)))
    if not items:
        raise InvalidInputError("pattern set must be nonempty")
    return PatternSet(tuple(items), mode)


def check_epsilon(epsilon) -> Fraction:
    """Positive rational from an int, float, string or Fraction."""
    try:
        eps = epsilon if isinstance(epsilon, Fraction) else Fraction(str(epsilon))
    except (ValueError, ZeroDivisionError):
        raise InvalidInputError(f"epsilon must be a positive number, got {epsilon!r}") from None
    if eps <= 0:
        raise InvalidInputError(f"epsilon must be positive, got {epsilon!r}")
    return eps
