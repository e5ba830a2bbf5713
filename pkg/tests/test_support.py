import random

from oracles import sample_posets
from posetlab.generators import gen_standard_example
from posetlab.poset import chain, from_cover_relations, random_poset
from posetlab.realizer import greedy_coloring
from posetlab.reversibility import dim_exact, find_alternating_cycle
from posetlab.support import (SupportContext, TauSignature, comparability_violations,
                              find_support_element, lemma6_partition, tau, w_i)


def test_tau_examples():
    C = chain(3)
    phi = greedy_coloring(C.cover_graph, [0, 1, 2], 8)
    assert tau(C, [0, 1, 2], phi, 2) == phi[0]
    P = from_cover_relations(3, [(1, 2)])
    phi = greedy_coloring(P.cover_graph, [0, 1, 2], 4)
    assert tau(P, [0, 1, 2], phi, 0) == phi[0]


def test_w_i_examples():
    rng = random.Random(1)
    for _ in range(20):
        P = random_poset(rng.randint(3, 12), rng.randint(1, 4), 0.4, rng)
        order = rng.sample(range(P.n), P.n)
        ctx = SupportContext(P, order)
        for z in range(P.n):
            assert ctx.w_i(z, ctx.phi[z]) == z
            assert ctx.w_i(z, ctx.tau[z]) == ctx.left_down[z]
            assert ctx.w_i(z, ctx.phi.palette + 1) is None
        z = P.n - 1
        assert w_i(P, order, ctx.phi, z, ctx.tau[z]) == ctx.left_down[z]


def test_empty_partition():
    P, _ = gen_standard_example(2)
    assert lemma6_partition(P, [], list(range(4))) == {}


def test_s2_alpha_classes_reversible():
    P, _ = gen_standard_example(2)
    classes = lemma6_partition(P, P.incomparable_pairs(), list(range(4)))
    for sig, pairs in classes.items():
        if sig.alpha in (2, 3):
            assert find_alternating_cycle(P, pairs) is None


def test_partition_is_partition():
    rng = random.Random(2)
    for _ in range(30):
        P = random_poset(rng.randint(2, 20), rng.randint(1, 4), 0.3, rng)
        order = rng.sample(range(P.n), P.n)
        inc = P.incomparable_pairs()
        classes = lemma6_partition(P, inc, order)
        flat = [p for pairs in classes.values() for p in pairs]
        assert sorted(flat) == sorted(inc)
        assert all(isinstance(s, TauSignature) and s.alpha in (1, 2, 3) for s in classes)


def test_comparability_claim():
    rng = random.Random(3)
    for _ in range(40):
        P = random_poset(rng.randint(2, 18), rng.randint(1, 5), 0.4, rng)
        order = rng.sample(range(P.n), P.n)
        assert comparability_violations(P, SupportContext(P, order)) == []


def test_dim_one_vacuous():
    P = from_cover_relations(3, [(0, 1)])
    rep = find_support_element(P, [(0, 2)])
    assert rep.dim_I == 1 and rep.holds


def test_s3():
    P, _ = gen_standard_example(3)
    rep = find_support_element(P)
    assert rep.dim_I == 3
    assert rep.holds and rep.claim7_ok
    assert rep.dim_I_prime == dim_exact(P, rep.I_prime).dim
    assert all(P.leq(rep.q, y) for _, y in rep.I_prime)


def test_random_height_two():
    for P in sample_posets(seed=31, count=30, max_inc=40, n_range=(4, 14), heights=(2, 2)):
        rep = find_support_element(P)
        assert rep.holds and rep.claim7_ok
        assert rep.c_exact is not None or P.n > 9


def test_report_dict():
    P, _ = gen_standard_example(2)
    d = find_support_element(P).as_dict()
    assert d["inequality"] == "PASS" and d["claim7"] == "PASS"
    assert set(d) >= {"q", "|I'|", "dim(I)", "dim(I')", "c"}
