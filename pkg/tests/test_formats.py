import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from posetlab.errors import ParseError
from posetlab.formats import (format_certificate, format_dot, format_graph, format_poset,
                              format_td, parse_certificate, parse_graph, parse_poset, parse_td)
from posetlab.generators import gen_kelly, gen_pht, gen_standard_example
from posetlab.graph import grid_graph
from posetlab.poset import random_poset
from posetlab.reversibility import dim_exact, partition_to_realizer


def test_poset_roundtrip_with_labels():
    P, _ = gen_standard_example(3)
    text = format_poset(P, comment="S_3\nsecond line")
    assert text.startswith("# S_3\n# second line\np poset 6 6\n")
    Q = parse_poset(text)
    assert Q == P and Q.labels == P.labels


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_poset_roundtrip_random(seed):
    rng = random.Random(seed)
    P = random_poset(rng.randint(0, 15), rng.randint(1, 5), rng.random(), rng)
    Q = parse_poset(format_poset(P))
    assert Q == P and Q.cover_relations() == P.cover_relations()


def test_comments_and_blank_lines():
    P = parse_poset("# hello\n\np poset 3 2  # header\nc 0 1\n\nc 1 2 # trailing\n")
    assert P.less(0, 2) and P.height() == 3


@pytest.mark.parametrize("text,line", [
    ("p poset 2 1\nc 0 x\n", 2),
    ("p poset 2 2\nc 0 1\nc 0 1\n", 3),
    ("p poset 2 1\nc 0 5\n", 2),
    ("p poset 2\n", 1),
    ("c 0 1\n", 1),
    ("p poset 2 1\nq 0 1\n", 2),
    ("p poset 2 1\nc 0 1\np poset 2 1\n", 3),
    ("p poset 2 1\nl 7 name\n", 2),
    ("p poset 2 1\nc 0 1 2\n", 2),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_poset(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_parse_errors_without_line():
    with pytest.raises(ParseError):
        parse_poset("")
    with pytest.raises(ParseError, match="announces"):
        parse_poset("p poset 3 2\nc 0 1\n")
    with pytest.raises(ParseError, match="cycle|related"):
        parse_poset("p poset 2 2\nc 0 1\nc 1 0\n")


def test_graph_roundtrip():
    G = grid_graph(3, 3)
    assert parse_graph(format_graph(G)) == G
    with pytest.raises(ParseError):
        parse_graph("p graph 2 1\ne 0 0\n")
    with pytest.raises(ParseError):
        parse_graph("p graph 2 2\ne 0 1\n")


@pytest.mark.parametrize("h,t", [(1, 1), (2, 1), (2, 2), (3, 1)])
def test_td_roundtrip(h, t):
    P, td, _ = gen_pht(h, t)
    text = format_td(td, P.n)
    assert text.splitlines()[0] == f"s td {len(td.bags)} {td.width + 1} {P.n}"
    td2, n = parse_td(text)
    assert n == P.n and td2.bags == td.bags and td2.edges == td.edges


def test_td_one_based():
    td, n = parse_td("c a comment\ns td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n")
    assert n == 3 and td.bags == [frozenset({0, 1}), frozenset({1, 2})] and td.edges == [(0, 1)]


@pytest.mark.parametrize("text", [
    "b 1 1\n",
    "s td 1 2 2\nb 1 1 2\nb 1 1\n",
    "s td 1 2 2\nb 1 1 3\n",
    "s td 2 2 2\nb 1 1 2\n",
    "s td 1 3 2\nb 1 1 2\n",
    "s td 2 2 2\nb 1 1 2\nb 2 2\n1 3\n",
    "",
])
def test_td_errors(text):
    with pytest.raises(ParseError):
        parse_td(text)


def test_certificate_roundtrip():
    P, _ = gen_standard_example(3)
    res = dim_exact(P)
    exts = partition_to_realizer(P, res.partition).extensions
    d, part, exts2 = parse_certificate(format_certificate(res.partition, exts))
    assert d == 3 and part == res.partition and exts2 == exts
    with pytest.raises(ParseError):
        parse_certificate("x 0 1 2\n")
    with pytest.raises(ParseError):
        parse_certificate("d 1\nz\n")


def test_dot():
    P, _, _ = gen_kelly(3)
    dot = format_dot(P)
    assert dot.startswith("digraph P {") and "rankdir=BT;" in dot
    for x, y in P.cover_relations():
        assert f"  {x} -> {y};" in dot
    assert dot.count("rank=same") == P.height()
    assert '[label="a1"]' in dot
