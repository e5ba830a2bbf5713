"""Alternating cycles, reversible sets and exact dimension.

A set ``I`` of incomparable pairs is reversible iff it contains no
alternating cycle, iff the order of ``P`` together with ``y < x`` for every
``(x, y)`` in ``I`` is acyclic. The cycle finder uses the first formulation;
the exact solver maintains closures of the second one per class, and the
brute-force oracle re-checks with the first, so the two routes stay
independent.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (BudgetExceededError, InternalProofViolation, NotIncomparableError,
                     NotReversibleError, SizeLimitError)
from .poset import Poset, iter_bits

Pair = tuple[int, int]

DEFAULT_MAX_PAIRS = int(os.environ.get("POSETLAB_BUDGET_DIM_PAIRS", 60))
DEFAULT_MAX_NODES = int(os.environ.get("POSETLAB_BUDGET_DIM_NODES", 2_000_000))
ORACLE_MAX_PAIRS = 14


@dataclass
class DimResult:
    dim: int
    partition: list[list[Pair]]
    lower: int = 0
    nodes: int = 0

    @property
    def classes(self) -> list[list[Pair]]:
        return self.partition


@dataclass
class Realizer:
    extensions: list[list[int]] = field(default_factory=list)

    def __len__(self):
        return len(self.extensions)


def _check_pairs(P: Poset, I: Iterable[Pair]) -> list[Pair]:
    pairs = [tuple(p) for p in I]
    for x, y in pairs:
        if not (0 <= x < P.n and 0 <= y < P.n) or P.comparable(x, y):
            raise NotIncomparableError(f"({x}, {y}) is not an incomparable pair")
    return pairs


def find_alternating_cycle(P: Poset, I: Iterable[Pair]) -> list[Pair] | None:
    """An alternating cycle contained in ``I``, or ``None`` if ``I`` is reversible.

    Directed graph on the pairs with an arc ``a -> b`` whenever ``x_a <= y_b``;
    any directed cycle read in order is an alternating cycle.
    """
    pairs = list(dict.fromkeys(_check_pairs(P, I)))
    k = len(pairs)
    succ = [[b for b in range(k) if b != a and P.leq(pairs[a][0], pairs[b][1])]
            for a in range(k)]
    color = [0] * k
    parent = [-1] * k
    for root in range(k):
        if color[root]:
            continue
        color[root] = 1
        stack = [(root, iter(succ[root]))]
        while stack:
            a, it = stack[-1]
            for b in it:
                if color[b] == 0:
                    color[b] = 1
                    parent[b] = a
                    stack.append((b, iter(succ[b])))
                    break
                if color[b] == 1:
                    cyc = [a]
                    while cyc[-1] != b:
                        cyc.append(parent[cyc[-1]])
                    cyc.reverse()
                    return [pairs[i] for i in cyc]
            else:
                color[a] = 2
                stack.pop()
    return None


def is_alternating_cycle(P: Poset, cycle: Sequence[Pair]) -> bool:
    k = len(cycle)
    if k < 2:
        return False
    if any(P.comparable(x, y) for x, y in cycle):
        return False
    return all(P.leq(cycle[i][0], cycle[(i + 1) % k][1]) for i in range(k))


def reversing_extension(P: Poset, I: Iterable[Pair]) -> list[int]:
    """A linear extension of ``P`` placing ``y`` before ``x`` for each ``(x, y)``."""
    pairs = _check_pairs(P, I)
    succ = [set(c) for c in P.upper_covers]
    for x, y in pairs:
        succ[y].add(x)
    indeg = [0] * P.n
    for s in succ:
        for v in s:
            indeg[v] += 1
    heap = [v for v in range(P.n) if indeg[v] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        v = heapq.heappop(heap)
        out.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(out) != P.n:
        raise NotReversibleError(find_alternating_cycle(P, pairs))
    return out


def verify_realizer(P: Poset, extensions: Sequence[Sequence[int]] | Realizer) -> bool:
    """Every extension is linear and every incomparable pair is reversed by one."""
    if isinstance(extensions, Realizer):
        extensions = extensions.extensions
    exts = [list(L) for L in extensions]
    if not exts or not all(P.is_linear_extension(L) for L in exts):
        return False
    positions = []
    for L in exts:
        pos = [0] * P.n
        for i, v in enumerate(L):
            pos[v] = i
        positions.append(pos)
    for x, y in P.incomparable_pairs():
        if not any(pos[y] < pos[x] for pos in positions):
            return False
    return True


def partition_to_realizer(P: Poset, partition: Sequence[Sequence[Pair]]) -> Realizer:
    exts = [reversing_extension(P, cls) for cls in partition]
    if not exts:
        exts = [P.linear_extension()]
    return Realizer(exts)


# -- exact dimension -----------------------------------------------------------


class _Classes:
    """Per-class closure of ``P`` plus the reversed pairs, as up-bitsets."""

    def __init__(self, P: Poset, d: int):
        base = [P.up_mask(x) for x in range(P.n)]
        self.n = P.n
        self.up = [list(base) for _ in range(d)]

    def can_add(self, k: int, pair: Pair) -> bool:
        x, y = pair
        return not (self.up[k][x] >> y) & 1

    def add(self, k: int, pair: Pair) -> list[int]:
        """Add ``pair`` to class ``k``; returns the previous state for undo."""
        x, y = pair
        up = self.up[k]
        saved = list(up)
        gain = up[x] | (1 << x)
        for a in range(self.n):
            if a == y or (up[a] >> y) & 1:
                up[a] |= gain
        return saved

    def restore(self, k: int, saved: list[int]):
        self.up[k] = saved


def _two_cycle_graph(P: Poset, pairs: Sequence[Pair]) -> list[int]:
    k = len(pairs)
    adj = [0] * k
    for a in range(k):
        xa, ya = pairs[a]
        for b in range(a + 1, k):
            xb, yb = pairs[b]
            if P.leq(xa, yb) and P.leq(xb, ya):
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    return adj


def _greedy_clique(adj: list[int]) -> list[int]:
    """Largest of the greedy cliques grown from each start vertex."""
    k = len(adj)
    best: list[int] = []
    deg = [bin(a).count("1") for a in adj]
    for s in sorted(range(k), key=lambda v: -deg[v]):
        clique = [s]
        cand = adj[s]
        while cand:
            v = max(iter_bits(cand), key=lambda u: (bin(adj[u] & cand).count("1"), -u))
            clique.append(v)
            cand &= adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def _first_fit(P: Poset, pairs: Sequence[Pair], order: Sequence[int]) -> list[list[int]]:
    classes = _Classes(P, len(pairs))
    members: list[list[int]] = []
    for i in order:
        for k in range(len(members)):
            if classes.can_add(k, pairs[i]):
                classes.add(k, pairs[i])
                members[k].append(i)
                break
        else:
            classes.add(len(members), pairs[i])
            members.append([i])
    return members


def _certify(P: Poset, partition: list[list[Pair]]):
    for cls in partition:
        cyc = find_alternating_cycle(P, cls)
        if cyc is not None:
            raise InternalProofViolation(f"solver produced a non-reversible class: {cyc}")


def dim_exact(P: Poset, I: Iterable[Pair] | None = None, max_pairs: int = DEFAULT_MAX_PAIRS,
              max_nodes: int = DEFAULT_MAX_NODES) -> DimResult:
    """Least number of reversible sets partitioning ``I`` (default ``Inc(P)``).

    Iterative deepening on the number of classes between a clique lower
    bound (pairs that pairwise form 2-cycles) and a first-fit upper bound.
    The clique pairs are pinned to distinct classes, the remaining pairs are
    branched most-constrained first, and a new class is only ever opened at
    the lowest empty index. The returned partition has been re-verified.
    Empty ``I`` has dimension 1 by convention.
    """
    pairs = _check_pairs(P, P.incomparable_pairs() if I is None else I)
    pairs = list(dict.fromkeys(pairs))
    if not pairs:
        return DimResult(1, [[]], lower=1)
    k = len(pairs)
    adj = _two_cycle_graph(P, pairs)
    clique = _greedy_clique(adj)
    lower = max(1, len(clique))
    if k > max_pairs:
        raise BudgetExceededError(f"{k} pairs exceed budget of {max_pairs}",
                                  lower=lower, upper=k)
    deg = [bin(a).count("1") for a in adj]
    ff_order = clique + sorted((i for i in range(k) if i not in set(clique)),
                               key=lambda i: (-deg[i], i))
    greedy = _first_fit(P, pairs, ff_order)
    best = [[pairs[i] for i in cls] for cls in greedy]
    nodes = 0
    d = lower
    while d < len(best):
        found, used = _search(P, pairs, clique, d, max_nodes - nodes)
        nodes += used
        if found is None and used < 0:
            raise BudgetExceededError("dimension search exceeded node budget",
                                      lower=d, upper=len(best))
        if found is not None:
            best = found
            break
        d += 1
    best = [cls for cls in best if cls]
    _certify(P, best)
    return DimResult(len(best), best, lower=len(best), nodes=nodes)


def _search(P: Poset, pairs, clique, d, budget):
    """Try to split ``pairs`` into ``d`` reversible classes.

    Returns ``(partition, nodes)``; ``nodes`` is negative on budget overflow.
    """
    k = len(pairs)
    classes = _Classes(P, d)
    assign = [-1] * k
    for c, i in enumerate(clique):
        classes.add(c, pairs[i])
        assign[i] = c
    opened = [len(clique)]
    nodes = [0]

    def feasible(i):
        limit = min(d, opened[0] + 1)
        return [c for c in range(limit) if classes.can_add(c, pairs[i])]

    def rec(remaining):
        nodes[0] += 1
        if nodes[0] > budget:
            raise _Overflow
        if not remaining:
            return True
        pick, pick_opts = None, None
        for i in remaining:
            opts = feasible(i)
            if not opts:
                return False
            if pick_opts is None or len(opts) < len(pick_opts):
                pick, pick_opts = i, opts
                if len(opts) == 1:
                    break
        rest = [i for i in remaining if i != pick]
        for c in pick_opts:
            saved = classes.add(c, pairs[pick])
            was_open = opened[0]
            if c == opened[0]:
                opened[0] += 1
            assign[pick] = c
            if rec(rest):
                return True
            assign[pick] = -1
            opened[0] = was_open
            classes.restore(c, saved)
        return False

    try:
        ok = rec([i for i in range(k) if assign[i] < 0])
    except _Overflow:
        return None, -1
    if not ok:
        return None, nodes[0]
    part: list[list[Pair]] = [[] for _ in range(d)]
    for i, c in enumerate(assign):
        part[c].append(pairs[i])
    return part, nodes[0]


class _Overflow(Exception):
    pass


def dimension(P: Poset, **kw) -> int:
    return dim_exact(P, None, **kw).dim


def brute_force_dim_oracle(P: Poset, I: Iterable[Pair] | None = None,
                           max_pairs: int = ORACLE_MAX_PAIRS) -> int:
    """Dimension by enumerating set partitions of the pairs.

    Partitions are generated as restricted-growth strings with at most ``d``
    blocks for ``d = 1, 2, ...``; a branch is cut as soon as a block contains
    an alternating cycle (supersets of a non-reversible set are not
    reversible), which keeps the enumeration exhaustive.
    """
    pairs = list(dict.fromkeys(_check_pairs(P, P.incomparable_pairs() if I is None else I)))
    if len(pairs) > max_pairs:
        raise SizeLimitError(f"oracle limited to {max_pairs} pairs, got {len(pairs)}")
    if not pairs:
        return 1

    def reversible(block):
        return find_alternating_cycle(P, block) is None

    def fits(d):
        blocks: list[list[Pair]] = []

        def rec(i):
            if i == len(pairs):
                return True
            for b in range(len(blocks)):
                blocks[b].append(pairs[i])
                if reversible(blocks[b]) and rec(i + 1):
                    return True
                blocks[b].pop()
            if len(blocks) < d:
                blocks.append([pairs[i]])
                if rec(i + 1):
                    return True
                blocks.pop()
            return False

        return rec(0)

    d = 1
    while not fits(d):
        d += 1
    return d
