import itertools
import random

import pytest

from oracles import atlas, literal_observation3, naive_weak_reach
from posetlab.errors import PreconditionError, SizeLimitError
from posetlab.generators import gen_standard_example
from posetlab.graph import Graph, complete_graph, cycle_graph, grid_graph, path_graph
from posetlab.wcol import (VertexOrder, check_reach_composition, choose_order,
                           observation3_violations, smallest_last_order, wcol_bruteforce,
                           wcol_exact, wcol_heuristic, wcol_under_order, weak_reach,
                           weakly_reachable)

STRATEGIES = ["smallest-last", "bfs", "random-restart"]


def test_radius_zero():
    G = grid_graph(2, 3)
    prof = weak_reach(G, range(G.n), 0)
    assert [set(s) for s in prof.sets] == [{v} for v in range(G.n)]
    assert prof.max_size == 1


def test_path_example():
    prof = weak_reach(path_graph(3), [0, 1, 2], 2)
    assert set(prof.sets[2]) == {0, 1, 2}
    assert prof.max_size == 3


def test_standard_example_cover_graph():
    S2, _ = gen_standard_example(2)
    for order in itertools.permutations(range(4)):
        for r in (1, 2, 3):
            assert weak_reach(S2.cover_graph, order, r).max_size == 2


def test_wcol_under_order_examples():
    K4 = complete_graph(4)
    for order in itertools.permutations(range(4)):
        assert wcol_under_order(K4, order, 1) == 4
    assert wcol_under_order(Graph(5), range(5), 3) == 1
    assert wcol_under_order(cycle_graph(5), range(5), 1) == 3


def test_wcol_exact_examples():
    assert wcol_exact(path_graph(4), 1)[0] == 2
    assert wcol_exact(complete_graph(4), 1)[0] == 4
    for r in range(4):
        assert wcol_exact(Graph(1), r)[0] == 1
    assert wcol_exact(Graph(0), 1)[0] == 0


def test_wcol_exact_order_attains_value():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(2, 7)
        G = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4])
        for r in (1, 2, 3):
            val, pi = wcol_exact(G, r)
            assert wcol_under_order(G, pi, r) == val
            assert val == wcol_bruteforce(G, r)


def test_wcol_exact_grid():
    assert wcol_exact(grid_graph(3, 3), 2)[0] == wcol_bruteforce(grid_graph(3, 3), 2) == 4


def test_size_limit():
    with pytest.raises(SizeLimitError):
        wcol_exact(path_graph(10), 1)
    assert wcol_exact(path_graph(10), 1, limit=10)[0] == 2


def test_reach_matches_path_enumeration():
    # exhaustive over graphs up to 6 vertices, sampled orders for each
    rng = random.Random(0)
    for G in atlas(6):
        for _ in range(3):
            order = rng.sample(range(G.n), G.n)
            for r in range(G.n):
                assert [set(s) for s in weak_reach(G, order, r).sets] == naive_weak_reach(G, order, r)


def test_reach_matches_path_enumeration_n8():
    rng = random.Random(1)
    for _ in range(40):
        n = rng.randint(7, 8)
        G = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.3])
        order = rng.sample(range(n), n)
        for r in (1, 2, 3, 5):
            assert [set(s) for s in weak_reach(G, order, r).sets] == naive_weak_reach(G, order, r)


def test_profile_invariants():
    rng = random.Random(5)
    G = grid_graph(3, 4)
    order = rng.sample(range(G.n), G.n)
    pos = {v: i for i, v in enumerate(order)}
    prev = None
    for r in range(6):
        prof = weak_reach(G, order, r)
        for v, s in enumerate(prof.sets):
            assert v in s
            assert all(pos[u] <= pos[v] for u in s)
            if prev is not None:
                assert prev.sets[v] <= s
        prev = prof


def test_edge_deletion_never_increases():
    rng = random.Random(9)
    G = grid_graph(3, 3)
    for _ in range(10):
        order = rng.sample(range(G.n), G.n)
        for u, v in G.edges:
            H = G.without_edge(u, v)
            for r in (1, 2, 3):
                assert wcol_under_order(H, order, r) <= wcol_under_order(G, order, r)


def test_heuristics():
    tree = Graph(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    assert wcol_heuristic(tree, 1, "smallest-last")[0] <= 2
    for strat in STRATEGIES:
        assert wcol_heuristic(grid_graph(3, 3), 0, strat)[0] == 1
    exact = wcol_exact(grid_graph(3, 3), 2)[0]
    assert wcol_heuristic(grid_graph(3, 3), 2, "random-restart", seed=1, iters=200)[0] >= exact
    with pytest.raises(ValueError):
        wcol_heuristic(tree, 1, "nope")


def test_heuristic_deterministic():
    G = grid_graph(3, 4)
    a = wcol_heuristic(G, 2, "random-restart", seed=4)
    b = wcol_heuristic(G, 2, "random-restart", seed=4)
    assert a == b


def test_smallest_last_ties():
    # all degrees equal: the lowest id is removed first and so placed last
    order = smallest_last_order(cycle_graph(4)).order
    assert order[-1] == 0
    assert sorted(order) == [0, 1, 2, 3]


def test_choose_order_modes():
    G = grid_graph(3, 3)
    val, pi, exact = choose_order(G, 2)
    assert exact and val == 4
    val_h, pi_h, exact_h = choose_order(G, 2, mode="heuristic")
    assert not exact_h and val_h >= val
    big = grid_graph(4, 4)
    assert choose_order(big, 1)[2] is False
    with pytest.raises(ValueError):
        choose_order(big, 1, mode="fancy")


def test_vertex_order_validation():
    with pytest.raises(ValueError):
        VertexOrder((0, 0, 1))
    pi = VertexOrder((2, 0, 1))
    assert pi.before(2, 0) and pi.leftmost([0, 1]) == 0


def test_reach_composition_trivial():
    G = path_graph(3)
    assert check_reach_composition(G, [0, 1, 2], 1, 1, 1, 1, 0, 0, [1]) is not None


def test_reach_composition_bad_precondition():
    G = path_graph(4)
    order = [1, 0, 2, 3]
    # Q = 2-1-0 has leftmost 1, strictly left of w = y = 2
    with pytest.raises(PreconditionError):
        check_reach_composition(G, order, 2, 2, 2, 0, 0, 1, [2, 1, 0])
    with pytest.raises(PreconditionError):
        check_reach_composition(G, order, 3, 2, 2, 2, 0, 0, [2])
    with pytest.raises(PreconditionError):
        check_reach_composition(G, order, 2, 2, 3, 3, 0, 0, [2, 0, 3])


def test_observation3_literal_small():
    rng = random.Random(3)
    for G in atlas(5):
        for _ in range(3):
            order = rng.sample(range(G.n), G.n)
            assert list(literal_observation3(G, order)) == []
            assert observation3_violations(G, order) == []


def test_observation3_n7_sample():
    rng = random.Random(21)
    for _ in range(30):
        n = 7
        G = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.35])
        order = rng.sample(range(n), n)
        assert observation3_violations(G, order) == []


def test_weakly_reachable_definition():
    G = path_graph(3)
    assert weakly_reachable(G, [0, 1, 2], 2, 0, 2)
    assert not weakly_reachable(G, [0, 1, 2], 2, 0, 1)
    assert not weakly_reachable(G, [1, 0, 2], 2, 0, 2)
