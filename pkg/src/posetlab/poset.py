"""Finite posets stored as closed strict-order bitsets.

Elements are the integers ``0..n-1``. For each element the strict upset and
strict downset are kept as Python ints used as bitsets, which makes
comparability tests and closure/reduction cheap at the sizes we care about.
"""

from __future__ import annotations

import heapq
import random
from functools import cached_property
from typing import Iterable, Sequence

from .errors import CycleError
from .graph import Graph


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _topological_order(n: int, succ: Sequence[Iterable[int]]) -> list[int]:
    indeg = [0] * n
    for x in range(n):
        for y in succ[x]:
            indeg[y] += 1
    heap = [x for x in range(n) if indeg[x] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        x = heapq.heappop(heap)
        order.append(x)
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                heapq.heappush(heap, y)
    if len(order) != n:
        raise CycleError("relations contain a directed cycle")
    return order


class Poset:
    """Immutable finite strict partial order.

    Build instances with :func:`from_cover_relations` (or
    :meth:`Poset.from_relations`); the constructor takes already-closed
    strict upsets and is meant for internal use.
    """

    def __init__(self, up: Sequence[int], labels: Sequence[str] | None = None):
        self.n = len(up)
        self._up = tuple(up)
        down = [0] * self.n
        for x in range(self.n):
            for y in iter_bits(self._up[x]):
                down[y] |= 1 << x
        self._down = tuple(down)
        if labels is not None and len(labels) != self.n:
            raise ValueError("labels must have one entry per element")
        self.labels = tuple(labels) if labels is not None else None

    @classmethod
    def from_relations(cls, n: int, relations: Iterable[tuple[int, int]], labels=None) -> "Poset":
        """Poset generated by ``relations`` (pairs ``low < high``) under transitivity."""
        succ: list[set[int]] = [set() for _ in range(n)]
        for lo, hi in relations:
            if not (0 <= lo < n and 0 <= hi < n):
                raise IndexError(f"relation ({lo}, {hi}) out of range for n={n}")
            if lo == hi:
                raise CycleError(f"element {lo} related to itself")
            succ[lo].add(hi)
        order = _topological_order(n, succ)
        up = [0] * n
        for x in reversed(order):
            mask = 0
            for y in succ[x]:
                mask |= (1 << y) | up[y]
            up[x] = mask
        return cls(up, labels)

    # -- basic queries -------------------------------------------------

    def less(self, x: int, y: int) -> bool:
        return (self._up[x] >> y) & 1 == 1

    def leq(self, x: int, y: int) -> bool:
        return x == y or (self._up[x] >> y) & 1 == 1

    def comparable(self, x: int, y: int) -> bool:
        return x == y or self.less(x, y) or self.less(y, x)

    def up_mask(self, x: int) -> int:
        """Strict upset of ``x`` as a bitset."""
        return self._up[x]

    def down_mask(self, x: int) -> int:
        return self._down[x]

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def element(self, label: str) -> int:
        if self.labels is None:
            return int(label)
        return self.labels.index(label)

    def relations(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.n) for y in iter_bits(self._up[x])]

    @cached_property
    def _cover_list(self) -> tuple[tuple[int, int], ...]:
        covers = []
        for x in range(self.n):
            for y in iter_bits(self._up[x]):
                if self._up[x] & self._down[y] == 0:
                    covers.append((x, y))
        return tuple(covers)

    def cover_relations(self) -> list[tuple[int, int]]:
        """Pairs ``(x, y)`` such that ``y`` covers ``x``."""
        return list(self._cover_list)

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        res: list[list[int]] = [[] for _ in range(self.n)]
        for x, y in self._cover_list:
            res[x].append(y)
        return tuple(tuple(r) for r in res)

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        res: list[list[int]] = [[] for _ in range(self.n)]
        for x, y in self._cover_list:
            res[y].append(x)
        return tuple(tuple(r) for r in res)

    @cached_property
    def cover_graph(self) -> Graph:
        return Graph(self.n, self._cover_list)

    @cached_property
    def levels(self) -> tuple[int, ...]:
        """Size of the longest chain with top element ``x``, per element."""
        lvl = [0] * self.n
        order = _topological_order(self.n, self.upper_covers)
        for x in order:
            lvl[x] = 1 + max((lvl[z] for z in self.lower_covers[x]), default=0)
        return tuple(lvl)

    def height(self) -> int:
        return max(self.levels, default=0)

    def minimal_elements(self) -> list[int]:
        return [x for x in range(self.n) if self._down[x] == 0]

    def maximal_elements(self) -> list[int]:
        return [x for x in range(self.n) if self._up[x] == 0]

    def incomparable_pairs(self) -> list[tuple[int, int]]:
        """All ordered incomparable pairs, sorted."""
        full = (1 << self.n) - 1
        res = []
        for x in range(self.n):
            inc = full & ~(self._up[x] | self._down[x] | (1 << x))
            res.extend((x, y) for y in iter_bits(inc))
        return res

    def upset(self, elements: Iterable[int]) -> set[int]:
        mask = 0
        for x in elements:
            mask |= (1 << x) | self._up[x]
        return set(iter_bits(mask))

    def downset(self, elements: Iterable[int]) -> set[int]:
        mask = 0
        for x in elements:
            mask |= (1 << x) | self._down[x]
        return set(iter_bits(mask))

    def induced_subposet(self, elements: Iterable[int]) -> "Poset":
        """Restriction of the order to ``elements``; new ids follow sorted order."""
        keep = sorted(set(elements))
        index = {x: i for i, x in enumerate(keep)}
        up = []
        for x in keep:
            mask = 0
            for y in iter_bits(self._up[x]):
                if y in index:
                    mask |= 1 << index[y]
            up.append(mask)
        labels = [self.label(x) for x in keep] if self.labels is not None else None
        return Poset(up, labels)

    def is_linear_extension(self, order: Sequence[int]) -> bool:
        if sorted(order) != list(range(self.n)):
            return False
        pos = [0] * self.n
        for i, x in enumerate(order):
            pos[x] = i
        return all(pos[x] < pos[y] for x, y in self._cover_list)

    def linear_extension(self) -> list[int]:
        """Lexicographically smallest linear extension."""
        return _topological_order(self.n, self.upper_covers)

    def verify_standard_example(self, pairs: Sequence[tuple[int, int]]) -> bool:
        """True iff ``pairs`` = ``[(a_1, b_1), ...]`` induce a standard example.

        Checks ``a_i < b_j`` exactly when ``i != j`` and that the a's and the
        b's are antichains. Witness verification only, no search.
        """
        a = [p[0] for p in pairs]
        b = [p[1] for p in pairs]
        if len(pairs) < 2 or len(set(a) | set(b)) != 2 * len(pairs):
            return False
        m = len(pairs)
        for i in range(m):
            for j in range(m):
                if i != j:
                    if not self.less(a[i], b[j]):
                        return False
                    if self.comparable(a[i], a[j]) or self.comparable(b[i], b[j]):
                        return False
                elif self.comparable(a[i], b[i]):
                    return False
        return True

    # -- dunder ---------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Poset) and self._up == other._up

    def __hash__(self):
        return hash(self._up)

    def __repr__(self):
        return f"Poset(n={self.n}, covers={len(self._cover_list)})"


def from_cover_relations(n: int, covers: Iterable[tuple[int, int]], labels=None) -> Poset:
    """Poset whose order is the transitive closure of ``covers``.

    Raises :class:`CycleError` for cyclic input and ``IndexError`` for
    out-of-range elements.
    """
    return Poset.from_relations(n, covers, labels)


def chain(n: int) -> Poset:
    return from_cover_relations(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    return from_cover_relations(n, [])


def random_poset(n: int, height: int, density: float, rng: random.Random) -> Poset:
    """Random poset of height at most ``height``.

    Each element gets a uniform level in ``[0, height)``; every pair on
    strictly increasing levels is related independently with probability
    ``density`` before closing.
    """
    level = [rng.randrange(height) for _ in range(n)]
    rel = []
    for x in range(n):
        for y in range(n):
            if level[x] < level[y] and rng.random() < density:
                rel.append((x, y))
    return from_cover_relations(n, rel)
