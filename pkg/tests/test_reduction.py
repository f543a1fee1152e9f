import math
import random

import pytest

from oracles import brute_min_hitting, random_graph
from sparsehit import (Graph, InvalidInputError, ParameterOverflowError, build_ordering, enumerate_occurrences,
                       hitting_connected, hitting_general, minimal_heavy_sets, pattern_set, reduce_to_bounded_degree,
                       verify)
from sparsehit.generators import friendship_graph, grid_graph
from sparsehit.patterns import named_graph
from sparsehit.reduction import (ReductionParams, alpha_f, compute_redundant_set, default_parameters,
                                 degree_filter_to_g2, practical_parameters, prune_to_g1, theory_delta,
                                 theory_delta_prime)


def test_theory_delta_formula():
    # eps=1, gamma=3, W=3, W2=5: 4 * 3^4 + ceil(5 * 5) = 349, so delta = 350.
    assert theory_delta(1, 3, 3, 5) == 350
    # Edgeless graph: every wcol term is 1.
    assert theory_delta(1, 2, 1, 1) == math.floor(4 * 1 + 5) + 1


def test_theory_delta_prime_overflow():
    with pytest.raises(ParameterOverflowError):
        theory_delta_prime(10**6, 4, 10)
    assert theory_delta_prime(10, 2, 3) > 10


def test_practical_passthrough():
    p = practical_parameters("1/2", 3, 4, delta=7, delta_prime=9)
    assert (p.delta, p.delta_prime, p.theory_grade) == (7, 9, False)
    d = practical_parameters(1, 3, 4)
    assert d.delta == 17 and d.delta_prime == 51


def test_params_validation():
    with pytest.raises(InvalidInputError):
        ReductionParams(1, 0, 5)


def test_default_parameters_theory_grade():
    g = grid_graph(3, 3)
    fs = pattern_set("K2")
    sigma = build_ordering(g, 4)
    p = default_parameters(g, fs, 1, sigma, theory_grade=True)
    assert p.theory_grade
    assert p.delta == theory_delta(1, 2, sigma.wcol(2), sigma.wcol(4))


def _occ(g, spec):
    return enumerate_occurrences(g, pattern_set(spec))


def test_redundant_set_examples():
    g = grid_graph(4, 4)
    occ = _occ(g, "K3")
    assert compute_redundant_set(g, occ, []) == frozenset(range(16))
    fr = friendship_graph(6)
    occ = _occ(fr, "K3")
    star = minimal_heavy_sets(occ, 1, 3)
    assert star == [frozenset({0})]
    assert compute_redundant_set(fr, occ, star) == frozenset(range(fr.n))
    tri = named_graph("K3")
    occ = _occ(tri, "K3")
    star = minimal_heavy_sets(occ, 2, 3)
    assert star == [] and compute_redundant_set(tri, occ, star) == frozenset()


def test_prune_examples():
    g = grid_graph(3, 3)
    occ = _occ(g, "K3")
    g1, removed = prune_to_g1(g, frozenset(range(9)), occ, [], 2, 3)
    assert g1.m == 0 or not occ.sets
    g1, removed = prune_to_g1(g, frozenset(), _occ(g, "K2"), [], 2, 2)
    assert g1 == g and removed == []


def test_prune_friendship_keeps_heavy_core():
    fr = friendship_graph(6)
    occ = _occ(fr, "K3")
    star = minimal_heavy_sets(occ, 1, 3)
    g1, removed = prune_to_g1(fr, compute_redundant_set(fr, occ, star), occ, star, 1, 3)
    occ1 = _occ(g1, "K3")
    assert len(occ1) >= 3
    assert minimal_heavy_sets(occ1, 1, 3) == star
    assert removed == sorted(removed)


def test_degree_filter_examples():
    g = grid_graph(3, 3)
    g2, vs = degree_filter_to_g2(g, 5)
    assert vs == frozenset() and g2 == g
    star = named_graph("star4")
    assert degree_filter_to_g2(star, 4)[1] == frozenset({0})
    assert degree_filter_to_g2(g, 1)[1] == frozenset(g.non_isolated())


def test_friendship_pipeline():
    fr = friendship_graph(6)
    sol = hitting_connected(fr, pattern_set("K3"), 1, delta=1, delta_prime=3, audit=True)
    assert sol.valid and sol.size <= 2
    assert sol.trace.audits["heavy_sets_stable"] and sol.trace.audits["cores_hit"]


def test_no_occurrences_gives_empty():
    sol = hitting_connected(grid_graph(5, 5), pattern_set("K3"), 1)
    assert sol.size == 0 and sol.valid


def test_k4_and_grid():
    sol = hitting_connected(named_graph("K4"), pattern_set("K3"), 1)
    assert sol.valid and sol.size <= 4
    sol = hitting_connected(grid_graph(8, 8), pattern_set("K2"), 1)
    assert sol.valid and sol.size <= 64


def test_trace_invariants(rng):
    fs = pattern_set("K3,P4")
    for _ in range(10):
        g = random_graph(rng.randint(6, 12), 0.4, rng)
        tr = reduce_to_bounded_degree(g, fs, 1, delta=1, delta_prime=3)
        assert all(len(tr.g2.adj[v]) < tr.params.delta_prime for v in range(g.n))
        assert set(tr.removed) <= tr.R
        assert tr.g2 == tr.g1.remove_vertices(tr.v_star)
        d = tr.to_dict()
        assert {"R", "V_G1", "v_star", "params", "wcol", "timings"} <= set(d)


def test_heavy_sets_stable_for_small_delta(rng):
    for _ in range(25):
        g = random_graph(rng.randint(5, 11), 0.45, rng)
        fs = pattern_set(rng.choice(["K3", "P3", "C4"]))
        sol = hitting_connected(g, fs, 1, delta=1, delta_prime=rng.choice([2, 3, 4]), audit=True)
        assert sol.valid and sol.trace.audits["heavy_sets_stable"]


def test_cores_hit_needs_delta_above_wcol(rng):
    # With delta <= wcol_gamma the lifting cut is clamped to 1 and a heavy
    # core can be missed; delta = wcol_gamma + 1 restores the hitting audit.
    for _ in range(25):
        g = random_graph(rng.randint(5, 11), 0.45, rng)
        fs = pattern_set(rng.choice(["K3", "P3", "C4"]))
        w = build_ordering(g, fs.gamma).wcol(fs.gamma)
        sol = hitting_connected(g, fs, 1, delta=w + 1, delta_prime=rng.choice([2, 3, 4]), audit=True)
        assert sol.valid and sol.trace.audits["heavy_sets_stable"] and sol.trace.audits["cores_hit"]


def test_reduction_rejects_disconnected():
    with pytest.raises(InvalidInputError):
        hitting_connected(named_graph("P4"), pattern_set("K2+K2"), 1)


def test_alpha_f():
    assert alpha_f(pattern_set("K3")) == 9
    assert alpha_f(pattern_set("K2+K3")) == 1 * 2 * 9
    assert alpha_f(pattern_set("K2+K3", "ind"), named_graph("C5")) == 4 * 27 * 2


def test_general_examples():
    g = named_graph("K2+K2")
    sol = hitting_general(g, pattern_set("K2+K2"), 1)
    assert sol.size == 1 and sol.provenance["path"] == "small-opt"
    p = named_graph("P30")
    assert hitting_general(p, pattern_set("K2+K3"), 1).size == 0


def test_general_connected_path(rng):
    g = random_graph(14, 0.5, rng)
    fs = pattern_set("K3+K2")
    sol = hitting_general(g, fs, 1, node_limit=1)
    assert sol.valid and sol.provenance["small_opt"] == "budget-exceeded"
    with pytest.raises(Exception):
        hitting_general(g, fs, 1, node_limit=1, strict=True)


def test_general_small_opt_is_exact(rng):
    for _ in range(10):
        g = random_graph(rng.randint(4, 10), 0.4, rng)
        fs = pattern_set("K2+K2")
        sol = hitting_general(g, fs, 1)
        occ = enumerate_occurrences(g, fs)
        if sol.provenance["path"] == "small-opt":
            assert sol.size == brute_min_hitting(g.n, occ.sets)
        assert verify(g, fs, sol.vertices)[0]


def test_small_delta_repairs_unhit_cores():
    # delta=1 is below wcol_gamma here, so the lift alone misses a heavy core.
    edges = [(0, 3), (0, 5), (0, 8), (1, 2), (1, 5), (1, 7), (1, 9), (1, 10), (2, 3), (2, 5), (2, 7), (2, 9),
             (2, 10), (3, 5), (3, 8), (4, 6), (4, 7), (4, 9), (5, 7), (5, 8), (5, 9), (5, 10), (7, 9), (7, 10),
             (9, 10)]
    g = Graph(11, edges)
    fs = pattern_set("K2")
    sol = hitting_connected(g, fs, 1, delta=1, delta_prime=3, audit=True)
    assert sol.valid and verify(g, fs, sol.vertices)[0]
    assert sol.trace.repair and not sol.trace.audits["cores_hit"]
    assert sol.provenance["repaired"] == len(sol.trace.repair)
