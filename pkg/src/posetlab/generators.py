"""Extremal poset families with checkable witnesses.

Labeling schemes
----------------
* ``gen_standard_example(m)``: ids ``0..m-1`` are ``a1..am``, ids ``m..2m-1``
  are ``b1..bm``; witness pairs ``(a_i, b_i)``.
* ``gen_subdivided_standard(m, r)``: the ``2m`` ids above, then ``r`` new ids
  per cover ``a_i < b_j`` (``i != j``, lexicographic), labeled
  ``s<i>.<j>.<k>`` from bottom to top.
* ``gen_kelly(m)``: ``a1..am``, ``b1..bm``, then chains ``c1 < ... < c(m-1)``
  and ``d1 < ... < d(m-1)``. ``a_i < c_i`` and ``c_(j-1) < b_j`` give
  ``a_i < b_j`` for ``i < j``; ``a_i < d_(m+1-i)`` and ``d_(m-j) < b_j`` give
  it for ``i > j``. Between consecutive levels the cover graph is a
  subdivided ``K_{2,2}``, so it stays planar.
* ``gen_pht(h, t)``: integer ids assigned in construction order (no labels).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .errors import BudgetExceededError, DomainError
from .graph import Graph
from .poset import Poset, from_cover_relations

MAX_ELEMENTS = int(os.environ.get("POSETLAB_BUDGET_ELEMENTS", 200_000))


@dataclass
class TreeDecomposition:
    bags: list[frozenset]
    edges: list[tuple[int, int]] = field(default_factory=list)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def bags_containing(self, *vertices) -> list[int]:
        need = set(vertices)
        return [i for i, b in enumerate(self.bags) if need <= b]


def verify_tree_decomposition(G: Graph, td: TreeDecomposition) -> tuple[int, list[str]]:
    """Check the three decomposition axioms and that the bags form a tree.

    Returns ``(width, diagnostics)``; an empty diagnostics list means valid.
    """
    diags: list[str] = []
    k = len(td.bags)
    if k == 0:
        diags.append("decomposition has no bags")
        return -1, diags
    nbr: list[set[int]] = [set() for _ in range(k)]
    for i, j in td.edges:
        if not (0 <= i < k and 0 <= j < k) or i == j:
            diags.append(f"bad tree edge ({i}, {j})")
            continue
        nbr[i].add(j)
        nbr[j].add(i)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in nbr[v] - seen:
            seen.add(w)
            stack.append(w)
    if len(seen) != k or len({frozenset(e) for e in td.edges}) != k - 1:
        diags.append(f"bag graph is not a tree ({k} nodes, {len(td.edges)} edges)")
    holders: list[list[int]] = [[] for _ in range(G.n)]
    for i, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < G.n:
                diags.append(f"bag {i} contains unknown vertex {v}")
            else:
                holders[v].append(i)
    for v in range(G.n):
        if not holders[v]:
            diags.append(f"vertex {v} is in no bag")
    for u, v in G.edges:
        if not any(u in td.bags[i] for i in holders[v]):
            diags.append(f"edge ({u}, {v}) is in no bag")
    for v in range(G.n):
        hs = set(holders[v])
        if len(hs) <= 1:
            continue
        start = holders[v][0]
        comp, stack = {start}, [start]
        while stack:
            a = stack.pop()
            for b in nbr[a] & hs:
                if b not in comp:
                    comp.add(b)
                    stack.append(b)
        if comp != hs:
            diags.append(f"bags containing vertex {v} do not induce a subtree")
    return td.width, diags


# -- standard examples and subdivisions ------------------------------------------


def gen_standard_example(m: int) -> tuple[Poset, list[tuple[int, int]]]:
    if m < 2:
        raise DomainError("standard example needs m >= 2")
    covers = [(i, m + j) for i in range(m) for j in range(m) if i != j]
    labels = [f"a{i + 1}" for i in range(m)] + [f"b{i + 1}" for i in range(m)]
    return from_cover_relations(2 * m, covers, labels), [(i, m + i) for i in range(m)]


def gen_subdivided_standard(m: int, r: int) -> tuple[Poset, list[tuple[int, int]]]:
    """Standard example whose diagram edges are each subdivided ``r`` times."""
    if m < 2 or r < 0:
        raise DomainError("need m >= 2 and r >= 0")
    labels = [f"a{i + 1}" for i in range(m)] + [f"b{i + 1}" for i in range(m)]
    covers = []
    n = 2 * m
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            prev = i
            for k in range(r):
                labels.append(f"s{i + 1}.{j + 1}.{k + 1}")
                covers.append((prev, n))
                prev = n
                n += 1
            covers.append((prev, m + j))
    return from_cover_relations(n, covers, labels), [(i, m + i) for i in range(m)]


# -- Kelly-type planar family -----------------------------------------------------


@dataclass
class PlanarEmbedding:
    """Rotation system: ``rotation[v]`` lists the neighbours of ``v`` in cyclic order."""

    rotation: dict[int, list[int]]

    def faces(self) -> list[list[tuple[int, int]]]:
        nxt = {}
        for v, nb in self.rotation.items():
            for i, u in enumerate(nb):
                nxt[(u, v)] = (v, nb[(i + 1) % len(nb)])
        faces, seen = [], set()
        for dart in nxt:
            if dart in seen:
                continue
            face = []
            d = dart
            while d not in seen:
                seen.add(d)
                face.append(d)
                d = nxt[d]
            faces.append(face)
        return faces

    def euler_check(self, G: Graph) -> bool:
        """``V - E + F == 2`` on every connected component of ``G``."""
        for v in range(G.n):
            if sorted(self.rotation.get(v, [])) != sorted(G.adj[v]):
                return False
        face_of = {}
        faces = self.faces()
        for idx, face in enumerate(faces):
            for d in face:
                face_of[d] = idx
        for comp in G.components():
            cs = set(comp)
            V = len(comp)
            E = sum(1 for u, v in G.edges if u in cs)
            F = len({face_of[(u, v)] for u, v in face_of if u in cs}) if E else 1
            if V - E + F != 2:
                return False
        return True


def _planar_rotation(G: Graph) -> PlanarEmbedding:
    import networkx as nx

    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges)
    ok, emb = nx.check_planarity(H)
    if not ok:
        raise ValueError("graph is not planar")
    return PlanarEmbedding({v: list(emb.neighbors_cw_order(v)) for v in range(G.n)})


def gen_kelly(m: int) -> tuple[Poset, list[tuple[int, int]], PlanarEmbedding]:
    """Planar-cover-graph poset containing ``S_m`` on its a/b elements."""
    if m < 2:
        raise DomainError("Kelly construction needs m >= 2")
    a = list(range(m))
    b = list(range(m, 2 * m))
    c = list(range(2 * m, 3 * m - 1))
    d = list(range(3 * m - 1, 4 * m - 2))
    covers = []
    for k in range(m - 2):
        covers.append((c[k], c[k + 1]))
        covers.append((d[k], d[k + 1]))
    for i in range(1, m + 1):
        if i <= m - 1:
            covers.append((a[i - 1], c[i - 1]))
        if i >= 2:
            covers.append((a[i - 1], d[m - i]))
    for j in range(1, m + 1):
        if j >= 2:
            covers.append((c[j - 2], b[j - 1]))
        if j <= m - 1:
            covers.append((d[m - j - 1], b[j - 1]))
    labels = ([f"a{i + 1}" for i in range(m)] + [f"b{i + 1}" for i in range(m)]
              + [f"c{i + 1}" for i in range(m - 1)] + [f"d{i + 1}" for i in range(m - 1)])
    P = from_cover_relations(4 * m - 2, covers, labels)
    return P, list(zip(a, b)), _planar_rotation(P.cover_graph)


# -- P_{h,t} -------------------------------------------------------------------------


@dataclass(frozen=True)
class _Build:
    n: int
    covers: tuple[tuple[int, int], ...]
    bags: tuple[tuple[int, ...], ...]
    tedges: tuple[tuple[int, int], ...]
    vpairs: tuple[tuple[int, int], ...]


def pht_k(h: int, t: int) -> int:
    """Standard-example size of ``P_{h,t}`` by the construction's recurrence."""
    if h == 1:
        return 2
    if t == 1:
        return 2 * pht_k(h - 1, 1)
    return pht_k(h - 1, t) * pht_k(h, t - 1)


def pht_size(h: int, t: int) -> int:
    if h == 1:
        return 4
    if t == 1:
        return pht_size(h - 1, 1) + 4 * pht_k(h - 1, 1)
    return pht_size(h - 1, t) + pht_k(h - 1, t) * pht_size(h, t - 1)


def _shift(build: _Build, off: int, bag_off: int, extra=()):
    covers = [(x + off, y + off) for x, y in build.covers]
    bags = [tuple(v + off for v in bag) + tuple(extra) for bag in build.bags]
    tedges = [(i + bag_off, j + bag_off) for i, j in build.tedges]
    vpairs = [(x + off, y + off) for x, y in build.vpairs]
    return covers, bags, tedges, vpairs


def _first_bag_with(bags, a, b) -> int:
    for i, bag in enumerate(bags):
        if a in bag and b in bag:
            return i
    raise AssertionError(f"no bag holds vertical pair ({a}, {b})")


@lru_cache(maxsize=None)
def _pht(h: int, t: int) -> _Build:
    if h == 1:
        return _Build(4, ((0, 3), (1, 2)), ((0, 1, 2, 3),), (), ((0, 2), (1, 3)))
    if t == 1:
        base = _pht(h - 1, 1)
        n = base.n
        covers = list(base.covers)
        bags = list(base.bags)
        tedges = list(base.tedges)
        vpairs = []
        for a, b in base.vpairs:
            z = _first_bag_with(base.bags, a, b)
            x1, x2, y1, y2 = n, n + 1, n + 2, n + 3
            n += 4
            covers += [(x1, a), (x2, a), (b, y1), (b, y2), (x1, y2), (x2, y1)]
            zp = len(bags)
            bags += [(a, b, y1, y2), (a, x1, y1, y2), (a, x2, y1, y2)]
            tedges += [(z, zp), (zp, zp + 1), (zp, zp + 2)]
            vpairs += [(x1, y1), (x2, y2)]
        return _Build(n, tuple(covers), tuple(bags), tuple(tedges), tuple(vpairs))
    base = _pht(h - 1, t)
    sub = _pht(h, t - 1)
    sub_min = [x for x, _ in sub.vpairs]
    sub_max = [y for _, y in sub.vpairs]
    n = base.n
    covers = list(base.covers)
    bags = list(base.bags)
    tedges = list(base.tedges)
    vpairs = []
    for a, b in base.vpairs:
        z = _first_bag_with(base.bags, a, b)
        off, bag_off = n, len(bags)
        c2, b2, t2, v2 = _shift(sub, off, bag_off, extra=(a, b))
        covers += c2 + [(x + off, a) for x in sub_min] + [(b, y + off) for y in sub_max]
        bags += b2
        tedges += t2 + [(z, bag_off)]
        vpairs += v2
        n += sub.n
    return _Build(n, tuple(covers), tuple(bags), tuple(tedges), tuple(vpairs))


def gen_pht(h: int, t: int, max_elements: int = MAX_ELEMENTS):
    """``P_{h,t}`` with the tree decomposition built alongside it.

    Returns ``(poset, decomposition, vertical_pairs)``. Height is ``2h``, the
    extremal elements induce ``S_k`` with ``k = 2**comb(h+t-1, t)`` and the
    decomposition has width at most ``2t + 1``.
    """
    if h < 1 or t < 1:
        raise DomainError("need h >= 1 and t >= 1")
    size = pht_size(h, t)
    if size > max_elements:
        raise BudgetExceededError(f"P_{{{h},{t}}} has {size} elements, budget {max_elements}",
                                  lower=size, upper=size)
    build = _pht(h, t)
    P = from_cover_relations(build.n, build.covers)
    td = TreeDecomposition([frozenset(b) for b in build.bags], list(build.tedges))
    return P, td, list(build.vpairs)


def pht_k_formula(h: int, t: int) -> int:
    return 2 ** comb(h + t - 1, t)


def theorem11_instance(h: int, t: int, max_elements: int = MAX_ELEMENTS):
    """``P_{h', t'}`` with ``h' = h // 2`` and ``t' = (t - 1) // 2``: height at
    most ``h``, width at most ``t``."""
    if h < 4 or t < 3:
        raise DomainError("need h >= 4 and t >= 3")
    P, td, _ = gen_pht(h // 2, (t - 1) // 2, max_elements=max_elements)
    return P, td
