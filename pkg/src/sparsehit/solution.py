"""Solutions and the validity re-check."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable

from .exceptions import InvalidInputError, InvalidSolutionError
from .graph import Graph
from .patterns import DEFAULT_OCCURRENCE_BUDGET, PatternSet, enumerate_occurrences


@dataclass(frozen=True)
class Solution:
    """A hitting set with its certificate.

    Attributes
    ----------
    vertices : frozenset of int
    valid : bool
        Result of re-enumerating occurrences in ``G - vertices``.
    provenance : dict
        Solver path and parameter values.
    opt : int or None
        Optimum value when the producing solver knows it.
    trace : object or None
        Pipeline trace (see :class:`sparsehit.reduction.ReductionTrace`).
    """

    vertices: frozenset
    valid: bool
    provenance: dict = field(default_factory=dict)
    opt: int | None = None
    trace: Any = field(default=None, repr=False, compare=False)

    @property
    def size(self) -> int:
        return len(self.vertices)

    def __len__(self):
        return len(self.vertices)

    def to_dict(self) -> dict:
        out = {
            "size": self.size,
            "vertices": sorted(self.vertices),
            "valid": self.valid,
            "opt": self.opt,
            "provenance": _jsonable(self.provenance),
        }
        if self.trace is not None and hasattr(self.trace, "to_dict"):
            out["trace"] = self.trace.to_dict()
        return out


def _jsonable(obj):
    return json.loads(json.dumps(obj, default=_fallback))


def _fallback(obj):
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    return str(obj)


def residual_graph(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple]:
    """``G - S`` as an induced subgraph with its id map."""
    s = set(s)
    if any(not (0 <= v < g.n) for v in s):
        raise InvalidInputError("solution contains an unknown vertex id")
    return g.induced_subgraph(v for v in range(g.n) if v not in s)


def verify(g: Graph, fs: PatternSet, s: Iterable[int], budget: int = DEFAULT_OCCURRENCE_BUDGET) -> tuple[bool, int]:
    """Re-enumerate occurrences in ``G - S``.

    Returns
    -------
    valid : bool
        True iff no occurrence survives.
    surviving : int
        Number of distinct surviving occurrences.
    """
    rest, _ = residual_graph(g, s)
    surviving = len(enumerate_occurrences(rest, fs, budget=budget))
    return surviving == 0, surviving


def certified(g: Graph, fs: PatternSet, vertices: Iterable[int], provenance: dict,
              opt: int | None = None, trace=None) -> Solution:
    """Build a Solution after a full validity re-check.

    Raises
    ------
    InvalidSolutionError
        If any occurrence survives. Every solver funnels through here, so an
        invalid set is never returned silently.
    """
    vertices = frozenset(vertices)
    ok, surviving = verify(g, fs, vertices)
    if not ok:
        raise InvalidSolutionError(
            f"{provenance.get('solver', 'solver')} produced an invalid set: {surviving} occurrences survive",
            surviving=surviving)
    return Solution(vertices, True, dict(provenance), opt, trace)
