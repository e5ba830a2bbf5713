import random

import pytest

from oracles import sample_posets
from posetlab.errors import ColorCollisionError, InternalProofViolation
from posetlab.generators import gen_kelly, gen_pht, gen_standard_example
from posetlab.graph import Graph
from posetlab.poset import antichain, chain, random_poset
from posetlab.realizer import (Signature, SignatureTable, class_count_bound_ok, greedy_coloring,
                               reversible_classes, signature, theorem2_partition,
                               unique_color_violations, wu_wd)
from posetlab.reversibility import dim_exact, verify_realizer
from posetlab.wcol import weak_reach


def test_greedy_chain():
    C = chain(3)
    assert greedy_coloring(C.cover_graph, [0, 1, 2], 4).colors == (1, 2, 3)


def test_greedy_isolated():
    phi = greedy_coloring(Graph(4), [3, 1, 0, 2], 5)
    assert phi.colors == (1, 1, 1, 1) and phi.palette == 1


def test_greedy_standard_example():
    S2, _ = gen_standard_example(2)
    rng = random.Random(0)
    for _ in range(6):
        order = rng.sample(range(4), 4)
        assert greedy_coloring(S2.cover_graph, order, 3).palette == 2


def test_wu_wd_examples():
    C = chain(3)
    WU, WD = wu_wd(C, [0, 1, 2])
    assert WU[0] == {0}
    assert WD[2] == {0, 1, 2}
    assert WU[2] == {2}
    S2, _ = gen_standard_example(2)
    e = {s: S2.element(s) for s in ("a1", "a2", "b1", "b2")}
    pi = [e["a1"], e["a2"], e["b1"], e["b2"]]
    assert wu_wd(S2, pi, e["b1"])[1] == {e["a2"], e["b1"]}
    assert wu_wd(S2, pi, e["a1"])[0] == {e["a1"]}


def test_wu_wd_inside_reach():
    rng = random.Random(4)
    for _ in range(30):
        P = random_poset(rng.randint(3, 14), rng.randint(1, 4), 0.4, rng)
        order = rng.sample(range(P.n), P.n)
        WU, WD = wu_wd(P, order)
        reach = weak_reach(P.cover_graph, order, max(P.height() - 1, 0))
        for x in range(P.n):
            assert x in WU[x] and x in WD[x]
            assert WU[x] | WD[x] <= set(reach.sets[x])
            assert all(P.leq(x, y) for y in WU[x])
            assert all(P.leq(y, x) for y in WD[x])


def test_signature_s2_hand_computed():
    S2, _ = gen_standard_example(2)
    e = {s: S2.element(s) for s in ("a1", "a2", "b1", "b2")}
    pi = [e["a1"], e["a2"], e["b1"], e["b2"]]
    phi = greedy_coloring(S2.cover_graph, pi, 3)
    # WU[a1] = {a1}, WD[b1] = {a2, b1}; colors a1, a2 -> 1 and b1, b2 -> 2
    assert [phi[e[s]] for s in ("a1", "a2", "b1", "b2")] == [1, 1, 2, 2]
    sig = signature(S2, pi, phi, (e["a1"], e["b1"]))
    assert sig == Signature(frozenset({1}), frozenset({1}), frozenset({1}))


def test_signature_antichain():
    A = antichain(2)
    phi = greedy_coloring(A.cover_graph, [0, 1], 0)
    sig = signature(A, [0, 1], phi, (0, 1))
    assert sig.A == {phi[0]}
    assert sig.C <= sig.B <= sig.A


def test_signature_nesting_enforced():
    with pytest.raises(ValueError):
        Signature(frozenset({1}), frozenset({1, 2}), frozenset())


def test_disjoint_colors_give_empty_b():
    P, _ = gen_standard_example(3)
    order = list(range(P.n))
    phi = greedy_coloring(P.cover_graph, order, 3)
    table = SignatureTable(P, order, phi)
    for x, y in P.incomparable_pairs():
        s = table.signature((x, y))
        wu_cols = set(table.wu[x])
        wd_cols = set(table.wd[y])
        if not wu_cols & wd_cols:
            assert s.B == s.C == frozenset()


def test_chain_partition():
    res = theorem2_partition(chain(4))
    assert res.partition == [[]]
    assert verify_realizer(chain(4), res.realizer) and len(res.realizer) == 1


def test_s2_partition():
    P, _ = gen_standard_example(2)
    res = theorem2_partition(P)
    assert res.c == 2 and res.bound == 16
    assert reversible_classes(P, res.partition)
    assert res.num_classes <= 16
    assert verify_realizer(P, res.realizer)
    assert len(res.realizer) <= res.num_classes
    assert dim_exact(P).dim <= res.num_classes


def test_partition_properties_random():
    for P in sample_posets(seed=12, count=40, max_inc=10 ** 6, n_range=(4, 25), heights=(1, 3)):
        res = theorem2_partition(P)
        assert reversible_classes(P, res.partition)
        assert class_count_bound_ok(res)
        assert verify_realizer(P, res.realizer)
        assert unique_color_violations(P, res.coloring, res.height) == []
        flat = sorted(p for cls in res.partition for p in cls)
        assert flat == sorted(P.incomparable_pairs())


def test_generated_families():
    for P in (gen_kelly(3)[0], gen_pht(2, 1)[0], gen_standard_example(4)[0]):
        res = theorem2_partition(P)
        assert reversible_classes(P, res.partition) and class_count_bound_ok(res)
        assert verify_realizer(P, res.realizer)


def test_explicit_order_and_stats():
    P, _ = gen_standard_example(3)
    res = theorem2_partition(P, order=list(range(P.n))[::-1])
    st = res.stats()
    assert st["classes"] == res.num_classes and st["bound"] == 4 ** st["c"]
    assert st["order"] == "heuristic"
    assert theorem2_partition(P, mode="exact").order_exact


def test_small_radius_override_is_checked():
    # a tiny radius may break the guarantee; it must surface as an error, never silently
    rng = random.Random(6)
    for _ in range(20):
        P = random_poset(12, 4, 0.5, rng)
        try:
            res = theorem2_partition(P, radius=0)
        except (InternalProofViolation, ColorCollisionError):
            continue
        else:
            assert reversible_classes(P, res.partition)
