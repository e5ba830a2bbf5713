"""Weak reachability and weak coloring numbers.

A vertex ``u`` is weakly ``r``-reachable from ``v`` under an order ``pi`` if
some path of length at most ``r`` from ``v`` to ``u`` has ``u`` as its
leftmost vertex. Equivalently ``v`` lies within distance ``r`` of ``u`` in the
subgraph induced by the vertices not left of ``u``; that is how everything
here is computed.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import PreconditionError, SizeLimitError
from .graph import Graph
from .poset import iter_bits

EXACT_LIMIT = int(os.environ.get("POSETLAB_BUDGET_WCOL_N", 9))
INF = float("inf")


@dataclass(frozen=True)
class VertexOrder:
    """Left-to-right order of the vertices ``0..n-1``."""

    order: tuple[int, ...]
    pos: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        order = tuple(self.order)
        if sorted(order) != list(range(len(order))):
            raise ValueError("order must be a permutation of 0..n-1")
        pos = [0] * len(order)
        for i, v in enumerate(order):
            pos[v] = i
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "pos", tuple(pos))

    @classmethod
    def natural(cls, n: int) -> "VertexOrder":
        return cls(tuple(range(n)))

    def __len__(self):
        return len(self.order)

    def before(self, u: int, v: int) -> bool:
        """``u <_pi v``."""
        return self.pos[u] < self.pos[v]

    def leftmost(self, vertices) -> int:
        return min(vertices, key=self.pos.__getitem__)


def _as_order(order) -> VertexOrder:
    return order if isinstance(order, VertexOrder) else VertexOrder(tuple(order))


@dataclass(frozen=True)
class ReachProfile:
    radius: int
    sets: tuple[frozenset, ...]
    max_size: int


def _adj_masks(G: Graph) -> list[int]:
    masks = []
    for v in range(G.n):
        m = 0
        for w in G.adj[v]:
            m |= 1 << w
        masks.append(m)
    return masks


def _ball(adj: list[int], source: int, allowed: int, r: int) -> int:
    """Bitset of vertices within distance ``r`` of ``source`` inside ``allowed``."""
    seen = frontier = 1 << source
    for _ in range(r):
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        nxt &= allowed & ~seen
        if not nxt:
            break
        seen |= nxt
        frontier = nxt
    return seen


def weak_reach(G: Graph, order, r: int) -> ReachProfile:
    """Weak ``r``-reachability sets ``WR_r[v]`` for every vertex."""
    if r < 0:
        raise ValueError("radius must be non-negative")
    pi = _as_order(order)
    if len(pi) != G.n:
        raise ValueError("order size does not match graph")
    adj = _adj_masks(G)
    sets: list[set[int]] = [set() for _ in range(G.n)]
    allowed = 0
    for u in reversed(pi.order):
        allowed |= 1 << u
        for v in iter_bits(_ball(adj, u, allowed, r)):
            sets[v].add(u)
    frozen = tuple(frozenset(s) for s in sets)
    return ReachProfile(r, frozen, max((len(s) for s in frozen), default=0))


def wcol_under_order(G: Graph, order, r: int) -> int:
    return weak_reach(G, order, r).max_size


def weakly_reachable(G: Graph, order, v: int, u: int, r: int) -> bool:
    """Is ``u`` weakly ``r``-reachable from ``v``?"""
    pi = _as_order(order)
    pu = pi.pos[u]
    if pi.pos[v] < pu:
        return False
    dist = G.distances_from(u, allowed=lambda w: pi.pos[w] >= pu, limit=r)
    return v in dist


# -- exact -----------------------------------------------------------------


def wcol_exact(G: Graph, r: int, limit: int = EXACT_LIMIT) -> tuple[int, VertexOrder]:
    """Minimum over all orders of the largest weak ``r``-reach set.

    Branch and bound that fixes the order from the left. When ``u`` is placed
    after the set ``S``, the vertices that will weakly reach ``u`` are exactly
    those within distance ``r`` of ``u`` in ``G - S``, so the reach-set sizes
    can be accumulated incrementally; a placed vertex's size is final.
    """
    n = G.n
    if n > limit:
        raise SizeLimitError(f"exhaustive wcol limited to {limit} vertices, got {n}")
    if n == 0:
        return 0, VertexOrder(())
    adj = _adj_masks(G)
    full = (1 << n) - 1
    best_val, best_order = wcol_heuristic(G, r, "smallest-last")
    best = [best_val, best_order.order]
    ball_cache: dict[tuple[int, int], int] = {}
    seen: dict[int, list[tuple[int, tuple[int, ...]]]] = {}

    def ball(u, placed):
        key = (u, placed)
        b = ball_cache.get(key)
        if b is None:
            b = _ball(adj, u, full & ~placed, r)
            ball_cache[key] = b
        return b

    def search(placed, counts, curmax, prefix):
        unplaced = [v for v in range(n) if not (placed >> v) & 1]
        if not unplaced:
            if curmax < best[0]:
                best[0], best[1] = curmax, tuple(prefix)
            return
        bound = max(curmax, max(counts[v] + 1 for v in unplaced))
        if bound >= best[0]:
            return
        sig = tuple(counts[v] for v in unplaced)
        prior = seen.setdefault(placed, [])
        for m, c in prior:
            if m <= curmax and all(a <= b for a, b in zip(c, sig)):
                return
        prior.append((curmax, sig))
        children = []
        for u in unplaced:
            b = ball(u, placed)
            new = list(counts)
            top = curmax
            for v in iter_bits(b):
                new[v] += 1
                if new[v] > top:
                    top = new[v]
            children.append((top, new[u], u, new))
        children.sort()
        for top, _, u, new in children:
            if top >= best[0]:
                continue
            prefix.append(u)
            search(placed | (1 << u), new, top, prefix)
            prefix.pop()

    search(0, [0] * n, 0, [])
    return best[0], VertexOrder(best[1])


def wcol_bruteforce(G: Graph, r: int) -> int:
    """Literal minimum over all ``n!`` orders. Tiny graphs only."""
    from itertools import permutations

    return min(wcol_under_order(G, p, r) for p in permutations(range(G.n)))


# -- heuristics --------------------------------------------------------------


def smallest_last_order(G: Graph) -> VertexOrder:
    """Degeneracy order: repeatedly strip a minimum-degree vertex (lowest id on
    ties); the vertex removed last is leftmost."""
    deg = [len(a) for a in G.adj]
    alive = set(range(G.n))
    removed = []
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        alive.remove(v)
        removed.append(v)
        for w in G.adj[v]:
            if w in alive:
                deg[w] -= 1
    return VertexOrder(tuple(reversed(removed)))


def bfs_order(G: Graph) -> VertexOrder:
    order = []
    seen = set()
    for s in range(G.n):
        if s in seen:
            continue
        dist = G.distances_from(s)
        comp = sorted(dist, key=lambda v: (dist[v], v))
        seen.update(comp)
        order.extend(comp)
    return VertexOrder(tuple(order))


def local_search(G: Graph, r: int, seed: int = 0, iters: int = 200, restarts: int = 4):
    """Seeded adjacent-swap walk; a swap is kept unless it increases the max
    reach size. The budget ``iters`` is shared among ``restarts`` starts, the
    first of which is the smallest-last order."""
    rng = random.Random(seed)
    n = G.n
    start = list(smallest_last_order(G).order)
    best_val = wcol_under_order(G, start, r)
    best = list(start)
    if n < 2:
        return best_val, VertexOrder(tuple(best))
    per = [iters // restarts + (1 if i < iters % restarts else 0) for i in range(restarts)]
    for k, budget in enumerate(per):
        cur = list(start) if k == 0 else rng.sample(range(n), n)
        cur_val = wcol_under_order(G, cur, r)
        for _ in range(budget):
            i = rng.randrange(n - 1)
            cur[i], cur[i + 1] = cur[i + 1], cur[i]
            val = wcol_under_order(G, cur, r)
            if val <= cur_val:
                cur_val = val
                if val < best_val:
                    best_val, best = val, list(cur)
            else:
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
    return best_val, VertexOrder(tuple(best))


def wcol_heuristic(G: Graph, r: int, strategy: str = "smallest-last", seed: int = 0,
                   iters: int = 200) -> tuple[int, VertexOrder]:
    """Upper bound on ``wcol_r`` together with the order achieving it.

    ``strategy`` is one of ``smallest-last``, ``bfs`` or ``random-restart``.
    """
    if strategy == "smallest-last":
        pi = smallest_last_order(G)
    elif strategy == "bfs":
        pi = bfs_order(G)
    elif strategy == "random-restart":
        return local_search(G, r, seed=seed, iters=iters)
    else:
        raise ValueError(f"unknown order strategy {strategy!r}")
    return wcol_under_order(G, pi, r), pi


def choose_order(G: Graph, r: int, mode: str = "auto", limit: int = EXACT_LIMIT,
                 seed: int = 0) -> tuple[int, VertexOrder, bool]:
    """Order used by the realizer and support-lemma pipelines.

    Returns ``(value, order, exact)``; ``mode`` is ``auto`` (exact up to
    ``limit`` vertices, smallest-last beyond), ``exact`` or ``heuristic``.
    """
    if mode == "exact" or (mode == "auto" and G.n <= limit):
        val, pi = wcol_exact(G, r, limit=max(limit, G.n) if mode == "exact" else limit)
        return val, pi, True
    if mode not in ("auto", "heuristic"):
        raise ValueError(f"unknown order mode {mode!r}")
    val, pi = wcol_heuristic(G, r, "smallest-last", seed=seed)
    return val, pi, False


# -- reach composition -------------------------------------------------------


def _is_path(G: Graph, Q: Sequence[int]) -> bool:
    if not Q or len(set(Q)) != len(Q):
        return False
    return all(G.has_edge(a, b) for a, b in zip(Q, Q[1:]))


def check_reach_composition(G: Graph, order, w, x, y, z, k, l, Q):
    """Check the reach-composition property on one instance.

    Preconditions: ``w`` weakly ``k``-reachable from ``x``, ``y`` weakly
    ``l``-reachable from ``z``, ``Q`` a path (vertex list) from ``x`` to ``z``
    with ``left({w, y}) <=_pi left(Q)``. Returns ``(a, b)`` with ``a`` weakly
    ``(k + l + |Q| - 1)``-reachable from ``b`` and ``{a, b} = {w, y}``, or
    ``None`` if neither holds (a counterexample).
    """
    pi = _as_order(order)
    if not weakly_reachable(G, pi, x, w, k):
        raise PreconditionError(f"{w} is not weakly {k}-reachable from {x}")
    if not weakly_reachable(G, pi, z, y, l):
        raise PreconditionError(f"{y} is not weakly {l}-reachable from {z}")
    Q = list(Q)
    if not _is_path(G, Q) or Q[0] != x or Q[-1] != z:
        raise PreconditionError("Q is not a path from x to z")
    if min(pi.pos[w], pi.pos[y]) > min(pi.pos[q] for q in Q):
        raise PreconditionError("left(Q) lies strictly left of both w and y")
    radius = k + l + len(Q) - 1
    if weakly_reachable(G, pi, y, w, radius):
        return (w, y)
    if weakly_reachable(G, pi, w, y, radius):
        return (y, w)
    return None


def _threshold_distances(G: Graph, pi: VertexOrder):
    """``D[i][a][b]``: distance from ``a`` to ``b`` using only vertices at
    positions ``>= i`` (missing key means unreachable)."""
    tables = []
    for i in range(G.n):
        allowed = lambda w, i=i: pi.pos[w] >= i
        row = {}
        for a in pi.order[i:]:
            row[a] = G.distances_from(a, allowed=allowed)
        tables.append(row)
    return tables


def observation3_violations(G: Graph, order) -> list[tuple]:
    """All reach-composition counterexamples for one graph and order.

    Every valid instance ``(w, x, y, z, k, l, Q)`` is dominated by the one
    with ``k``, ``l`` the least radii witnessing the two reachabilities and
    ``Q`` a shortest ``x``-``z`` path inside the vertices not left of
    ``left({w, y})``: its conclusion uses the smallest radius, and weak
    reachability is monotone in the radius. Checking the dominating
    instances therefore covers all instances, with unbounded ``k``, ``l``
    and path length.
    """
    pi = _as_order(order)
    D = _threshold_distances(G, pi)
    n = G.n
    pos = pi.pos

    def wdist(src, target):
        return D[pos[target]].get(src, {}).get(target, INF)

    reach = [[(w, wdist(x, w)) for w in range(n) if wdist(x, w) < INF] for x in range(n)]
    bad = []
    for x in range(n):
        for z in range(n):
            for w, k in reach[x]:
                for y, l in reach[z]:
                    if w == y:
                        continue
                    p = min(pos[w], pos[y])
                    m = D[p][x].get(z, INF)
                    if m == INF:
                        continue
                    radius = k + l + m
                    if wdist(y, w) <= radius or wdist(w, y) <= radius:
                        continue
                    bad.append((w, x, y, z, k, l, m))
    return bad
