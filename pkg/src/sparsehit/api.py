"""One entry point over every solver path."""

from __future__ import annotations

from .decompositions import biclique_wrapper_hitting, clique_wrapper_hitting
from .exceptions import InvalidInputError
from .graph import Graph
from .patterns import PatternSet
from .reduction import hitting_connected, hitting_general
from .solution import Solution
from .solvers import SOLVER_NAMES, get_solver

ALL_SOLVERS = SOLVER_NAMES + ("reduction", "clique", "biclique")

_REDUCTION_KEYS = {"theory_grade", "c_g", "delta", "delta_prime", "audit"}


def solve(g: Graph, fs: PatternSet, epsilon, solver: str = "reduction", inner: str = "exact",
          **options) -> Solution:
    """Run the named solver.

    Parameters
    ----------
    solver : str
        ``exact``, ``separator``, ``baker``, ``carve+exact``, ``reduction``,
        ``clique`` or ``biclique``.
    inner : str
        Inner solver for ``reduction`` and the wrappers.
    **options
        ``reduction`` takes ``theory_grade``, ``delta``, ``delta_prime``,
        ``c_g``, ``audit`` and ``node_limit``; ``clique`` takes ``method``;
        the base solvers take their own budgets, ``beta`` and ``seed``.
    """
    if solver == "reduction":
        if fs.all_connected:
            unknown = set(options) - _REDUCTION_KEYS
            if unknown:
                raise InvalidInputError(f"unsupported options for reduction: {sorted(unknown)}")
            return hitting_connected(g, fs, epsilon, inner, **options)
        return hitting_general(g, fs, epsilon, inner, **options)
    if solver == "clique":
        return clique_wrapper_hitting(g, fs, epsilon, inner, **options)
    if solver == "biclique":
        return biclique_wrapper_hitting(g, fs, epsilon, inner, **options)
    if solver not in SOLVER_NAMES:
        raise InvalidInputError(f"unknown solver {solver!r}; choose from {', '.join(ALL_SOLVERS)}")
    if solver != "exact" and not fs.all_connected:
        raise InvalidInputError(f"solver {solver!r} needs connected patterns; use 'reduction'")
    return get_solver(solver, **options)(g, fs, epsilon)
