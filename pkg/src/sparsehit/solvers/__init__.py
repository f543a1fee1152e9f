"""Solvers usable on their own or as the inner solver of the reduction."""

from __future__ import annotations

from functools import partial

from ..exceptions import InvalidInputError
from .baker import Layering, baker_layering, build_layering, q_pieces
from .carving import ball_carving_partition, carve_exact
from .exact import exact_branching_solver, greedy_hitting_set, minimum_hitting_set, packing_lower_bound
from .separators import SeparatorResult, balanced_separator, separator_scheme, shatter_into_small_components

SOLVER_NAMES = ("exact", "separator", "baker", "carve+exact")


def _exact(g, fs, epsilon=None, **opts):
    return exact_branching_solver(g, fs, **opts)


_REGISTRY = {
    "exact": _exact,
    "separator": separator_scheme,
    "baker": baker_layering,
    "carve+exact": carve_exact,
}


def get_solver(name: str, **options):
    """Solver handle ``f(g, fs, epsilon) -> Solution`` by name.

    Keyword options (budgets, ``beta``, ``seed``) are bound into the handle.
    """
    if name not in _REGISTRY:
        raise InvalidInputError(f"unknown solver {name!r}; choose from {', '.join(SOLVER_NAMES)}")
    return partial(_REGISTRY[name], **options) if options else _REGISTRY[name]


__all__ = [
    "Layering", "SeparatorResult", "SOLVER_NAMES", "ball_carving_partition", "baker_layering",
    "balanced_separator", "build_layering", "carve_exact", "exact_branching_solver", "get_solver",
    "greedy_hitting_set", "minimum_hitting_set", "packing_lower_bound", "q_pieces",
    "separator_scheme", "shatter_into_small_components",
]
