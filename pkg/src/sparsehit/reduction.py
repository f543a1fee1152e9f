"""Degree reduction for connected patterns and the general-pattern wrapper."""

from __future__ import annotations

import itertools
import math
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .exceptions import BudgetExceededError, InvalidInputError, ParameterOverflowError
from .graph import Graph
from .ordering import VertexOrdering, build_ordering, degeneracy, weak_reachability_sets
from .patterns import OccurrenceIndex, PatternSet, conn_expansion, enumerate_occurrences
from .solution import Solution, certified
from .sunflowers import candidate_cores, has_disjoint_packing, heavy_threshold, minimal_heavy_sets

FLOAT_LIMIT = int(sys.float_info.max)


def as_fraction(x) -> Fraction:
    """Exact rational from an int, float, string or Fraction."""
    if isinstance(x, Fraction):
        out = x
    elif isinstance(x, float):
        out = Fraction(repr(x))
    else:
        out = Fraction(str(x))
    if out <= 0:
        raise InvalidInputError("epsilon must be positive")
    return out


@dataclass(frozen=True)
class ReductionParams:
    """Thresholds of the reduction.

    Attributes
    ----------
    epsilon : Fraction
    delta : int
        Sunflower multiplier; ``X`` is heavy at ``delta * gamma^|X|`` petals.
    delta_prime : int
        Degree cut-off for ``V*``.
    theory_grade : bool
        True when both values satisfy the analysis inequalities evaluated
        with measured weak coloring numbers.
    wcol_gamma, wcol_2gamma : int or None
        Measured values the parameters were derived from.
    c_g : int
        Neighborhood-complexity surrogate used by the theory-grade formula.
    """

    epsilon: Fraction
    delta: int
    delta_prime: int
    theory_grade: bool = False
    wcol_gamma: int | None = None
    wcol_2gamma: int | None = None
    c_g: int = 4

    def __post_init__(self):
        if self.delta < 1:
            raise InvalidInputError("delta must be at least 1")
        if self.delta_prime < 1:
            raise InvalidInputError("delta_prime must be at least 1")

    def to_dict(self) -> dict:
        big = lambda x: x if x is None or x < 10**15 else f"~1e{len(str(x)) - 1}"
        return {
            "epsilon": str(self.epsilon), "delta": big(self.delta), "delta_prime": big(self.delta_prime),
            "theory_grade": self.theory_grade, "wcol_gamma": self.wcol_gamma,
            "wcol_2gamma": self.wcol_2gamma, "c_g": self.c_g,
        }


def theory_delta(epsilon, gamma: int, wcol_gamma: int, wcol_2gamma: int) -> int:
    """Smallest integer strictly above
    ``(2+2e)/e * W^(gamma+1) + ceil((4+e)/e * W2)``."""
    eps = as_fraction(epsilon)
    bound = (2 + 2 * eps) / eps * wcol_gamma ** (gamma + 1) + math.ceil((4 + eps) / eps * wcol_2gamma)
    return math.floor(bound) + 1


def theory_delta_prime(delta: int, gamma: int, wcol_2gamma: int, c_g: int = 4) -> int:
    """Degree cut-off satisfying the V* size condition with surrogate ``c_g``."""
    base = delta * gamma ** gamma
    fact = math.factorial(gamma)
    first = gamma * base ** gamma * fact + wcol_2gamma
    # Bail out before building a number with millions of digits.
    log2 = (gamma + 1) * math.log2(base) + math.log2(c_g * fact * 2 ** gamma)
    if 3 * gamma * log2 > 1100:
        raise ParameterOverflowError(
            f"theory-grade delta' is about 2^{3 * gamma * log2:.0f}, beyond double range")
    second = (c_g * base ** (gamma + 1) * fact * 2 ** gamma) ** (3 * gamma)
    value = first + second
    if value > FLOAT_LIMIT:
        raise ParameterOverflowError("theory-grade delta' exceeds double range")
    return value


def practical_parameters(epsilon, gamma: int, wcol_gamma: int, delta: int | None = None,
                         delta_prime: int | None = None) -> ReductionParams:
    """Small thresholds for benchmarking.

    The default ``delta`` is the smallest integer above ``(2+2e)/e * W``
    with ``W`` the measured ``wcol_gamma``, which keeps the averaging bound
    ``|S1'| <= e/(2+e) |S1|`` true. The default ``delta_prime`` is
    ``gamma * delta``.
    """
    eps = as_fraction(epsilon)
    if delta is None:
        delta = math.floor((2 + 2 * eps) / eps * wcol_gamma) + 1
    if delta_prime is None:
        delta_prime = gamma * delta
    return ReductionParams(eps, int(delta), int(delta_prime), False, wcol_gamma, None)


def default_parameters(g: Graph, fs: PatternSet, epsilon, sigma: VertexOrdering,
                       theory_grade: bool = False, c_g: int = 4, delta: int | None = None,
                       delta_prime: int | None = None) -> ReductionParams:
    """Parameters from measured weak coloring numbers under ``sigma``.

    Theory-grade mode needs ``wcol_{2 gamma}(G, sigma)``; it is computed
    here if ``sigma`` was built for a smaller radius. The measured value
    upper-bounds ``wcol_{2 gamma}`` of any subgraph under the restricted
    order, so it can stand in for the value on ``G1``.

    Raises
    ------
    ParameterOverflowError
        If the theory-grade ``delta'`` exceeds double range.
    """
    gamma = fs.gamma
    if sigma.r >= gamma:
        w = sigma.wcol(gamma)
    else:
        w = weak_reachability_sets(g, sigma, gamma).wcol
    if not theory_grade:
        return practical_parameters(epsilon, gamma, w, delta, delta_prime)
    eps = as_fraction(epsilon)
    if sigma.r >= 2 * gamma:
        w2 = sigma.wcol(2 * gamma)
    else:
        w2 = weak_reachability_sets(g, sigma, 2 * gamma).wcol
    d = theory_delta(eps, gamma, w, w2) if delta is None else delta
    dp = theory_delta_prime(d, gamma, w2, c_g) if delta_prime is None else delta_prime
    return ReductionParams(eps, d, dp, True, w, w2, c_g)


# -- trace -----------------------------------------------------------------
@dataclass
class ReductionTrace:
    """Intermediate objects of one reduction run."""

    params: ReductionParams
    R: frozenset = frozenset()
    g1: Graph | None = None
    removed: tuple = ()
    v_star: frozenset = frozenset()
    g2: Graph | None = None
    sigma: VertexOrdering | None = None
    rho: dict = field(default_factory=dict)
    s1: frozenset = frozenset()
    s1_prime: frozenset = frozenset()
    repair: frozenset = frozenset()
    gamma_star_g: list = field(default_factory=list)
    gamma_star_g1: list | None = None
    audits: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    occurrences: int = 0

    def to_dict(self) -> dict:
        n = self.g1.n if self.g1 is not None else 0
        return {
            "R": sorted(self.R),
            "R_size": len(self.R),
            "V_G1": n - len(self.removed),
            "removed": len(self.removed),
            "v_star": len(self.v_star),
            "s1": len(self.s1),
            "s1_prime": len(self.s1_prime),
            "repair": len(self.repair),
            "gamma_star_g": [sorted(x) for x in self.gamma_star_g],
            "occurrences": self.occurrences,
            "params": self.params.to_dict(),
            "wcol": list(self.sigma.wcol_stats) if self.sigma is not None else None,
            "audits": self.audits,
            "timings": {k: round(v, 6) for k, v in self.timings.items()},
        }


# -- pipeline stages -------------------------------------------------------
def compute_redundant_set(g: Graph, occ: OccurrenceIndex, gamma_star: list) -> frozenset:
    """Vertices all of whose occurrences contain a minimal heavy set.

    An occurrence contains some heavy set iff it contains a minimal one.
    Vertices in no occurrence qualify vacuously.
    """
    covered = _covering_cores(occ, gamma_star)
    return frozenset(v for v in range(g.n) if all(covered[i] for i in occ.by_vertex[v]))


def _covering_cores(occ: OccurrenceIndex, gamma_star: list) -> list[list[frozenset]]:
    """For each occurrence, the listed cores it contains."""
    star = set(gamma_star)
    out: list[list[frozenset]] = []
    if not star:
        return [[] for _ in occ.sets]
    sizes = sorted({len(x) for x in star})
    for s in occ.sets:
        items = sorted(s)
        found = [frozenset(c) for k in sizes if k <= len(items)
                 for c in itertools.combinations(items, k) if frozenset(c) in star]
        out.append(found)
    return out


def prune_to_g1(g: Graph, R, occ: OccurrenceIndex, gamma_star: list, delta: int, gamma: int):
    """Delete vertices of ``R`` while every minimal heavy set stays heavy.

    Candidates are visited once each, in ascending id order. Deletion removes
    the incident edges, so vertex ids stay stable.

    Returns
    -------
    g1 : Graph
    removed : list of int
    """
    covering = _covering_cores(occ, gamma_star)
    support: dict[frozenset, list[int]] = {x: [] for x in gamma_star}
    for oid, xs in enumerate(covering):
        for x in xs:
            support[x].append(oid)
    in_core: set[int] = set().union(*gamma_star) if gamma_star else set()
    alive = [True] * len(occ.sets)
    removed = []
    # A known packing of live occurrences per core; only a deletion touching
    # it forces a re-solve.
    witness: dict[frozenset, list[int] | None] = {x: None for x in gamma_star}
    for v in sorted(R):
        if v in in_core:
            continue
        touching = [oid for oid in occ.by_vertex[v] if alive[oid]]
        affected = {x for oid in touching for x in covering[oid]}
        ok = True
        updates = {}
        for x in sorted(affected, key=lambda c: (len(c), sorted(c))):
            w = witness[x]
            if w is not None and all(alive[oid] and v not in occ.sets[oid] for oid in w):
                continue
            ids = [oid for oid in support[x] if alive[oid] and v not in occ.sets[oid]]
            found, packing, _ = has_disjoint_packing([occ.sets[oid] - x for oid in ids],
                                                    heavy_threshold(len(x), delta, gamma))
            if not found:
                ok = False
                break
            updates[x] = [ids[i] for i in packing]
        if ok:
            removed.append(v)
            witness.update(updates)
            for oid in touching:
                alive[oid] = False
    return g.remove_vertices(removed), removed


def degree_filter_to_g2(g1: Graph, delta_prime: int) -> tuple[Graph, frozenset]:
    """Remove vertices of degree at least ``delta_prime`` (edges only)."""
    v_star = frozenset(v for v in range(g1.n) if len(g1.adj[v]) >= delta_prime)
    return g1.remove_vertices(v_star), v_star


def lift_solution(g: Graph, trace: ReductionTrace, s2, fs: PatternSet, params: ReductionParams,
                  wr=None) -> Solution:
    """Lift a solution of ``G2`` back to ``G``.

    ``S1 = S2 + V*``; every vertex weakly reachable from at least
    ``max(1, delta - wcol_gamma)`` members of ``S1`` joins as ``S1'``.
    When ``delta <= wcol_gamma`` a minimal heavy set may stay unhit; one
    vertex of each such set is added and counted in ``trace.repair``.

    Raises
    ------
    InvalidSolutionError
        If the lifted set misses an occurrence of ``G``.
    """
    s2_vertices = frozenset(s2.vertices if isinstance(s2, Solution) else s2)
    gamma = fs.gamma
    sigma = trace.sigma
    if wr is None:
        wr = sigma.wr if sigma.r == gamma and sigma.wr is not None else weak_reachability_sets(g, sigma, gamma)
    w = wr.wcol
    s1 = s2_vertices | trace.v_star
    rho: dict[int, int] = {}
    for u in s1:
        for v in wr.sets[u]:
            rho[v] = rho.get(v, 0) + 1
    cut = max(1, params.delta - w)
    s1_prime = frozenset(v for v, c in rho.items() if c >= cut)
    trace.s1 = s1
    trace.rho = rho
    trace.s1_prime = s1_prime
    if params.delta > w:
        trace.audits["lift_size_bound"] = len(s1_prime) * (params.delta - w) <= w * len(s1)
    if trace.gamma_star_g1 is not None:
        hit = s1 | s1_prime
        trace.audits["cores_hit"] = all(not hit.isdisjoint(x) for x in trace.gamma_star_g1)
    # Every occurrence destroyed by pruning contains a core of gamma_star_g. With
    # delta > wcol_gamma those cores are already hit; below that, hit the rest.
    chosen = s1 | s1_prime
    repair = set()
    for x in trace.gamma_star_g:
        if chosen.isdisjoint(x) and repair.isdisjoint(x):
            repair.add(min(x, key=lambda v: (-rho.get(v, 0), v)))
    trace.repair = frozenset(repair)
    prov = {"solver": "reduction", "params": params.to_dict(), "repaired": len(repair),
            "inner": s2.provenance if isinstance(s2, Solution) else None}
    return certified(g, fs, chosen | repair, prov, trace=trace)


# -- solver handles --------------------------------------------------------
SolverHandle = Callable[[Graph, PatternSet, Fraction], Solution]


def _resolve(inner) -> SolverHandle:
    if callable(inner):
        return inner
    from .solvers import get_solver
    return get_solver(inner)


def reduce_to_bounded_degree(g: Graph, fs: PatternSet, epsilon, *, theory_grade: bool = False, c_g: int = 4,
                             delta: int | None = None, delta_prime: int | None = None,
                             audit: bool = False) -> ReductionTrace:
    """Run every stage up to ``G2`` and return the trace.

    ``trace.g2`` is the bounded-degree instance; ``trace.v_star`` the
    high-degree vertices removed from ``G1``. See :func:`hitting_connected`
    for the parameters.
    """
    if not fs.all_connected:
        raise InvalidInputError("the reduction requires connected patterns")
    eps = as_fraction(epsilon)
    gamma = fs.gamma
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    sigma = build_ordering(g, 2 * gamma if theory_grade else gamma)
    timings["ordering"] = time.perf_counter() - t0

    params = default_parameters(g, fs, eps, sigma, theory_grade, c_g, delta, delta_prime)
    trace = ReductionTrace(params=params, sigma=sigma, timings=timings)

    t0 = time.perf_counter()
    occ = enumerate_occurrences(g, fs)
    trace.occurrences = len(occ)
    timings["enumerate"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    gamma_star = minimal_heavy_sets(occ, params.delta, gamma)
    trace.gamma_star_g = gamma_star
    trace.R = compute_redundant_set(g, occ, gamma_star)
    timings["redundant"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    g1, removed = prune_to_g1(g, trace.R, occ, gamma_star, params.delta, gamma)
    trace.g1, trace.removed = g1, tuple(removed)
    timings["prune"] = time.perf_counter() - t0

    if audit:
        occ1 = enumerate_occurrences(g1, fs)
        trace.gamma_star_g1 = minimal_heavy_sets(occ1, params.delta, gamma)
        trace.audits["heavy_sets_stable"] = trace.gamma_star_g1 == gamma_star

    t0 = time.perf_counter()
    g2, v_star = degree_filter_to_g2(g1, params.delta_prime)
    trace.g2, trace.v_star = g2, v_star
    timings["degree_filter"] = time.perf_counter() - t0
    return trace


def hitting_connected(g: Graph, fs: PatternSet, epsilon, inner="exact", *, theory_grade: bool = False,
                      c_g: int = 4, delta: int | None = None, delta_prime: int | None = None,
                      audit: bool = False) -> Solution:
    """Reduce to bounded degree, solve there, lift back.

    Parameters
    ----------
    g : Graph
    fs : PatternSet
        All patterns must be connected.
    epsilon : rational
    inner : str or callable
        Solver for the bounded-degree instance, called with ``epsilon/4``.
    theory_grade : bool
        Use the analysis-grade thresholds (may raise ParameterOverflowError).
    delta, delta_prime : int, optional
        Explicit thresholds; override the defaults.
    audit : bool
        Recompute the minimal heavy sets of ``G1`` and record the stability
        and hitting audits in the trace.

    Returns
    -------
    Solution
        With the :class:`ReductionTrace` attached.
    """
    if not fs.all_connected:
        raise InvalidInputError("hitting_connected requires connected patterns")
    eps = as_fraction(epsilon)
    trace = reduce_to_bounded_degree(g, fs, eps, theory_grade=theory_grade, c_g=c_g, delta=delta,
                                     delta_prime=delta_prime, audit=audit)
    gamma = fs.gamma
    sigma = trace.sigma
    wr = sigma.wr if sigma.r == gamma else weak_reachability_sets(g, sigma, gamma)

    t0 = time.perf_counter()
    s2 = _resolve(inner)(trace.g2, fs, eps / 4)
    trace.timings["inner"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    sol = lift_solution(g, trace, s2, fs, trace.params, wr=wr)
    trace.timings["lift"] = time.perf_counter() - t0
    return sol


def alpha_f(fs: PatternSet, g: Graph | None = None) -> int:
    """Additive loss of the connected reduction.

    ``|F| * l * c^2`` for subgraphs and ``|F| * l^2 * c^3 * d`` for induced
    subgraphs, with ``l`` the most components of a pattern, ``c`` the largest
    component and ``d`` the measured degeneracy of ``g``.
    """
    comps = [p.components() for p in fs.patterns]
    ell = max(len(c) for c in comps)
    c = max(h.n for cs in comps for h in cs)
    if fs.induced:
        d = max(1, degeneracy(g)) if g is not None else 1
        return len(fs) * ell ** 2 * c ** 3 * d
    return len(fs) * ell * c ** 2


def hitting_general(g: Graph, fs: PatternSet, epsilon, inner="exact", *, node_limit: int | None = 200_000,
                    strict: bool = False, **kwargs) -> Solution:
    """Approximate hitting for arbitrary (possibly disconnected) patterns.

    First decides by bounded branching whether the optimum is at most
    ``ceil(5 alpha_F / epsilon)`` and returns it exactly if so. Otherwise
    runs :func:`hitting_connected` with ``epsilon/2`` on every
    connected-component choice and keeps the smallest set valid for ``fs``.

    With ``strict=False`` an exhausted branching budget is recorded in the
    provenance and the connected path is used instead.
    """
    from .solvers.exact import minimum_hitting_set
    from .solution import verify

    eps = as_fraction(epsilon)
    alpha = alpha_f(fs, g)
    threshold = math.ceil(5 * alpha / eps)
    occ = enumerate_occurrences(g, fs)
    small_opt = "not-run"
    try:
        s = minimum_hitting_set(occ.sets, budget=threshold, node_limit=node_limit)
        if s is not None:
            prov = {"solver": "general", "path": "small-opt", "alpha_F": alpha, "threshold": threshold}
            return certified(g, fs, s, prov, opt=len(s))
        small_opt = "opt-above-threshold"
    except BudgetExceededError:
        if strict:
            raise
        small_opt = "budget-exceeded"

    best = None
    tried = []
    for sub in conn_expansion(fs):
        sol = hitting_connected(g, sub, eps / 2, inner, **kwargs)
        ok, _ = verify(g, fs, sol.vertices)
        tried.append({"patterns": sub.names, "size": sol.size, "valid_for_F": ok})
        if ok and (best is None or sol.size < best.size):
            best = sol
    if best is None:
        raise InvalidInputError("no connected choice produced a valid set")
    prov = {"solver": "general", "path": "connected", "alpha_F": alpha, "threshold": threshold,
            "small_opt": small_opt, "choices": tried, "inner": best.provenance}
    return Solution(best.vertices, True, prov, None, best.trace)
