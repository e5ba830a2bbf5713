"""Signature realizer: at most ``4**c`` reversible classes from weak coloring.

Pipeline: pick an order ``pi`` of the cover graph, greedily color left to
right so that each element avoids the colors of its weak
``(3h-3)``-reachable set, then label every incomparable pair ``(x, y)`` by
the nested color sets ``A >= B >= C`` built from the weakly reachable
up-set of ``x`` and down-set of ``y``. Pairs with equal labels are
reversible together.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import ColorCollisionError, InternalProofViolation
from .graph import Graph
from .poset import Poset
from .reversibility import Realizer, find_alternating_cycle, partition_to_realizer
from .wcol import VertexOrder, _as_order, choose_order, weak_reach


@dataclass(frozen=True)
class GreedyColoring:
    radius: int
    colors: tuple[int, ...]
    order: VertexOrder
    c: int

    @property
    def palette(self) -> int:
        return max(self.colors, default=0)

    def __getitem__(self, x):
        return self.colors[x]


@dataclass(frozen=True)
class Signature:
    A: frozenset
    B: frozenset
    C: frozenset

    def __post_init__(self):
        if not (self.C <= self.B <= self.A):
            raise ValueError("signature sets must be nested C <= B <= A")

    def key(self):
        return (tuple(sorted(self.A)), tuple(sorted(self.B)), tuple(sorted(self.C)))


def greedy_coloring(G: Graph, order, r: int) -> GreedyColoring:
    """Smallest color (from 1) not used on ``WR_r[x] - {x}``, left to right."""
    pi = _as_order(order)
    prof = weak_reach(G, pi, r)
    colors = [0] * G.n
    for x in pi.order:
        used = {colors[z] for z in prof.sets[x] if z != x}
        col = 1
        while col in used:
            col += 1
        colors[x] = col
    return GreedyColoring(r, tuple(colors), pi, prof.max_size)


def _weak_chain_sets(P: Poset, pi: VertexOrder, upward: bool) -> list[set[int]]:
    """``WU`` (``upward``) or ``WD`` for every element.

    ``y`` is in ``WU[x]`` iff a covering chain from ``x`` up to ``y`` avoids
    everything left of ``y``; found by walking down from each ``y`` through
    elements not left of ``y``.
    """
    step = P.lower_covers if upward else P.upper_covers
    res: list[set[int]] = [set() for _ in range(P.n)]
    for y in range(P.n):
        py = pi.pos[y]
        stack, seen = [y], {y}
        while stack:
            v = stack.pop()
            res[v].add(y)
            for w in step[v]:
                if w not in seen and pi.pos[w] >= py:
                    seen.add(w)
                    stack.append(w)
    return res


def wu_wd(P: Poset, order, x: int | None = None):
    """Weakly reachable up-set and down-set.

    With ``x`` given returns ``(WU[x], WD[x])``; otherwise the two full lists.
    """
    pi = _as_order(order)
    WU = _weak_chain_sets(P, pi, upward=True)
    WD = _weak_chain_sets(P, pi, upward=False)
    if x is None:
        return WU, WD
    return WU[x], WD[x]


def _color_index(sets, phi: GreedyColoring, what: str) -> list[dict[int, int]]:
    out = []
    for x, s in enumerate(sets):
        idx: dict[int, int] = {}
        for y in s:
            col = phi.colors[y]
            if col in idx:
                raise ColorCollisionError(
                    f"{what}[{x}] contains {idx[col]} and {y}, both colored {col}")
            idx[col] = y
        out.append(idx)
    return out


class SignatureTable:
    """Precomputed ``wu_i``/``wd_i`` lookups for fast signature evaluation."""

    def __init__(self, P: Poset, order, phi: GreedyColoring):
        self.pi = _as_order(order)
        self.phi = phi
        WU, WD = wu_wd(P, self.pi)
        self.wu = _color_index(WU, phi, "WU")
        self.wd = _color_index(WD, phi, "WD")

    def signature(self, pair) -> Signature:
        x, y = pair
        wu, wd = self.wu[x], self.wd[y]
        A = frozenset(wu)
        B = A & frozenset(wd)
        pos = self.pi.pos
        C = frozenset(i for i in B if pos[wu[i]] < pos[wd[i]])
        return Signature(A, B, C)


def signature(P: Poset, order, phi: GreedyColoring, pair) -> Signature:
    return SignatureTable(P, order, phi).signature(pair)


@dataclass
class Theorem2Result:
    partition: list[list[tuple[int, int]]]
    signatures: list[Signature]
    order: VertexOrder
    coloring: GreedyColoring
    height: int
    radius: int
    c: int
    order_exact: bool
    realizer: Realizer

    @property
    def num_classes(self) -> int:
        return len(self.partition)

    @property
    def bound(self) -> int:
        return 4 ** self.c

    def stats(self) -> dict:
        return {
            "n": len(self.order),
            "height": self.height,
            "radius": self.radius,
            "c": self.c,
            "colors": self.coloring.palette,
            "classes": self.num_classes,
            "bound": self.bound,
            "order": "exact" if self.order_exact else "heuristic",
        }


def theorem2_partition(P: Poset, order=None, mode: str = "auto", radius: int | None = None,
                       seed: int = 0) -> Theorem2Result:
    """Group ``Inc(P)`` by signature and certify every class.

    ``order`` fixes ``pi``; otherwise it is chosen by ``mode`` (see
    :func:`posetlab.wcol.choose_order`). ``c`` is the largest weak
    ``r``-reach set under the order actually used. With the default radius
    ``3h - 3`` a non-reversible class raises :class:`InternalProofViolation`;
    a smaller ``radius`` is experimental and may raise
    :class:`ColorCollisionError` instead.
    """
    G = P.cover_graph
    h = P.height()
    r = 3 * h - 3 if radius is None else radius
    if order is None:
        _, pi, exact = choose_order(G, r, mode=mode, seed=seed)
    else:
        pi, exact = _as_order(order), False
    phi = greedy_coloring(G, pi, r)
    table = SignatureTable(P, pi, phi)
    groups: dict[tuple, list[tuple[int, int]]] = {}
    sigs: dict[tuple, Signature] = {}
    for pair in P.incomparable_pairs():
        s = table.signature(pair)
        groups.setdefault(s.key(), []).append(pair)
        sigs[s.key()] = s
    keys = sorted(groups)
    partition = [groups[k] for k in keys]
    for cls in partition:
        cyc = find_alternating_cycle(P, cls)
        if cyc is not None:
            raise InternalProofViolation(f"signature class contains alternating cycle {cyc}")
    if not partition:
        partition = [[]]
    realizer = partition_to_realizer(P, partition)
    return Theorem2Result(partition, [sigs[k] for k in keys], pi, phi, h, r, phi.c, exact,
                          realizer)


def unique_color_violations(P: Poset, phi: GreedyColoring, h: int) -> list[tuple[int, int, int]]:
    """Triples ``(x, y, z)`` with ``y != z`` in ``WR_{h-1}[x]`` sharing a color."""
    prof = weak_reach(P.cover_graph, phi.order, max(h - 1, 0))
    bad = []
    for x, s in enumerate(prof.sets):
        seen: dict[int, int] = {}
        for y in sorted(s):
            col = phi.colors[y]
            if col in seen:
                bad.append((x, seen[col], y))
            seen[col] = y
    return bad


def class_count_bound_ok(result: Theorem2Result) -> bool:
    return result.num_classes <= 4 ** result.c


def reversible_classes(P: Poset, partition: Iterable) -> bool:
    return all(find_alternating_cycle(P, cls) is None for cls in partition)
