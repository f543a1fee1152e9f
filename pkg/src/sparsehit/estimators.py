"""scikit-learn style wrappers."""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .api import solve
from .decompositions import (audit_biclique_decomposition, audit_clique_decomposition,
                             k_biclique_decomposition, k_clique_decomposition_degeneracy,
                             k_clique_decomposition_divide_conquer)
from .exceptions import InvalidInputError
from .ordering import build_ordering
from .solution import residual_graph
from .validation import check_epsilon, check_graph, check_patterns


def _check_fitted(est, attr):
    if not hasattr(est, attr):
        raise NotFittedError(f"{type(est).__name__} is not fitted yet; call fit first")


class SubgraphHitting(TransformerMixin, BaseEstimator, auto_wrap_output_keys=None):
    """Find a small vertex set hitting every occurrence of the patterns.

    Parameters
    ----------
    patterns : str, PatternSet or list
        Forbidden patterns, e.g. ``"K3"`` or ``"K2,C4"``.
    mode : {"subgraph", "induced"}
    epsilon : float
        Approximation parameter.
    solver : str
        One of ``exact``, ``separator``, ``baker``, ``carve+exact``,
        ``reduction``, ``clique``, ``biclique``.
    inner : str
        Inner solver for ``reduction`` and the wrappers.
    theory_grade : bool
    delta, delta_prime : int, optional
    solver_options : dict, optional
        Extra keyword options forwarded to the solver.

    Attributes
    ----------
    hitting_set_ : list of int
        Chosen vertices as internal ids, sorted.
    hitting_labels_ : list
        The same vertices as input labels.
    solution_ : Solution
    trace_ : ReductionTrace or None

    Examples
    --------
    >>> from sparsehit import SubgraphHitting
    >>> est = SubgraphHitting("K3", solver="exact").fit([(0, 1), (1, 2), (0, 2)])
    >>> len(est.hitting_set_)
    1
    """

    def __init__(self, patterns="K3", mode="subgraph", epsilon=1.0, solver="reduction", inner="exact",
                 theory_grade=False, delta=None, delta_prime=None, solver_options=None):
        self.patterns = patterns
        self.mode = mode
        self.epsilon = epsilon
        self.solver = solver
        self.inner = inner
        self.theory_grade = theory_grade
        self.delta = delta
        self.delta_prime = delta_prime
        self.solver_options = solver_options

    def _options(self):
        opts = dict(self.solver_options or {})
        if self.solver == "reduction":
            opts.setdefault("theory_grade", self.theory_grade)
            if self.delta is not None:
                opts.setdefault("delta", self.delta)
            if self.delta_prime is not None:
                opts.setdefault("delta_prime", self.delta_prime)
        return opts

    def fit(self, X, y=None):
        g = check_graph(X)
        fs = check_patterns(self.patterns, self.mode)
        eps = check_epsilon(self.epsilon)
        sol = solve(g, fs, eps, self.solver, self.inner, **self._options())
        self.graph_ = g
        self.patterns_ = fs
        self.solution_ = sol
        self.hitting_set_ = sorted(sol.vertices)
        self.hitting_labels_ = [g.labels[v] for v in self.hitting_set_]
        self.trace_ = sol.trace
        return self

    def transform(self, X=None):
        """Residual graph ``G - S`` (defaults to the fitted graph).

        The result is the induced subgraph on the kept vertices; input labels
        carry over, internal ids are renumbered.
        """
        _check_fitted(self, "solution_")
        g = self.graph_ if X is None else check_graph(X)
        if X is not None and g.n != self.graph_.n:
            raise InvalidInputError("transform expects the graph passed to fit")
        return residual_graph(g, self.solution_.vertices)[0]

    def fit_transform(self, X, y=None):
        return self.fit(X).transform()


class KCliqueDecomposer(BaseEstimator):
    """Partition into disjoint ``K_k`` parts and a ``K_k``-free rest.

    Parameters
    ----------
    k : int
    method : {"degeneracy", "divide-conquer"}

    Attributes
    ----------
    decomposition_ : CliqueDecomposition
    audit_ : list of str
        Problems found by the independent audit (empty when valid).
    """

    def __init__(self, k=3, method="degeneracy"):
        self.k = k
        self.method = method

    def fit(self, X, y=None):
        if int(self.k) < 1:
            raise InvalidInputError("k must be at least 1")
        if self.method not in ("degeneracy", "divide-conquer"):
            raise InvalidInputError(f"unknown method {self.method!r}")
        g = check_graph(X)
        build = k_clique_decomposition_degeneracy if self.method == "degeneracy" else k_clique_decomposition_divide_conquer
        self.decomposition_ = build(g, int(self.k))
        self.audit_ = audit_clique_decomposition(g, self.decomposition_)
        return self


class KBicliqueDecomposer(BaseEstimator):
    """Partition into parts spanning ``K_{k,k}`` and a ``K_{k,k}``-free rest."""

    def __init__(self, k=2, node_limit=None):
        self.k = k
        self.node_limit = node_limit

    def fit(self, X, y=None):
        if int(self.k) < 1:
            raise InvalidInputError("k must be at least 1")
        g = check_graph(X)
        kwargs = {} if self.node_limit is None else {"node_limit": self.node_limit}
        self.decomposition_ = k_biclique_decomposition(g, int(self.k), **kwargs)
        self.audit_ = audit_biclique_decomposition(g, self.decomposition_)
        return self


class WeakColoringOrdering(BaseEstimator):
    """Degeneracy-based ordering with measured weak coloring numbers.

    Attributes
    ----------
    ordering_ : VertexOrdering
    wcol_ : tuple of int
        ``wcol_[i]`` is the measured ``wcol_i`` for ``i <= radius``.
    """

    def __init__(self, radius=2):
        self.radius = radius

    def fit(self, X, y=None):
        g = check_graph(X)
        self.ordering_ = build_ordering(g, int(self.radius))
        self.wcol_ = self.ordering_.wcol_stats
        return self
