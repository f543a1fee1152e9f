"""Approximate (induced) subgraph hitting on sparse graphs."""

from .api import ALL_SOLVERS, solve
from .decompositions import (BicliqueDecomposition, CliqueDecomposition, audit_biclique_decomposition,
                             audit_clique_decomposition, biclique_wrapper_hitting, clique_wrapper_hitting,
                             k_biclique_decomposition, k_clique_decomposition_degeneracy,
                             k_clique_decomposition_divide_conquer, k_subgraph_isomorphism)
from .estimators import KBicliqueDecomposer, KCliqueDecomposer, SubgraphHitting, WeakColoringOrdering
from .exceptions import (BudgetExceededError, InvalidInputError, InvalidSolutionError, ParameterOverflowError,
                         SparseHitError)
from .generators import GeneratorSpec, generate
from .graph import Graph, parse_edge_list, read_edge_list, write_edge_list
from .minors import contains_shallow_minor, shallow_minor_pattern_expansion
from .ordering import VertexOrdering, WeakReachability, build_ordering, degeneracy_ordering, weak_reachability_sets
from .patterns import (Mode, Pattern, PatternSet, conn_expansion, enumerate_occurrences, irrelevant_vertices,
                       pattern, pattern_set)
from .reduction import hitting_connected, hitting_general, reduce_to_bounded_degree
from .solution import Solution, verify
from .solvers import baker_layering, carve_exact, exact_branching_solver, separator_scheme
from .sunflowers import find_sunflower, is_heavy, minimal_heavy_sets

__version__ = "0.1.0"

__all__ = [
    "ALL_SOLVERS", "BicliqueDecomposition", "BudgetExceededError", "CliqueDecomposition", "GeneratorSpec",
    "Graph", "InvalidInputError", "InvalidSolutionError", "KBicliqueDecomposer", "KCliqueDecomposer", "Mode",
    "ParameterOverflowError", "Pattern", "PatternSet", "Solution", "SparseHitError", "SubgraphHitting",
    "VertexOrdering", "WeakColoringOrdering", "WeakReachability", "audit_biclique_decomposition",
    "audit_clique_decomposition", "baker_layering", "biclique_wrapper_hitting", "build_ordering", "carve_exact",
    "clique_wrapper_hitting", "conn_expansion", "contains_shallow_minor", "degeneracy_ordering",
    "enumerate_occurrences", "exact_branching_solver", "find_sunflower", "generate", "hitting_connected",
    "hitting_general", "irrelevant_vertices", "is_heavy", "k_biclique_decomposition",
    "k_clique_decomposition_degeneracy", "k_clique_decomposition_divide_conquer", "k_subgraph_isomorphism",
    "minimal_heavy_sets", "parse_edge_list", "pattern", "pattern_set", "read_edge_list", "reduce_to_bounded_degree",
    "separator_scheme", "shallow_minor_pattern_expansion", "solve", "verify", "weak_reachability_sets",
    "write_edge_list",
]
