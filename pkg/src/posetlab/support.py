"""Support element extraction for a set of incomparable pairs.

Given ``I``, find an element ``q`` such that the pairs of ``I`` whose upper
element lies above ``q`` keep at least ``dim(I)/c - 2`` of the dimension,
where ``c`` bounds the weak ``(4h-4)``-reach sets. The construction colors
greedily at radius ``4h-4``, tags each element ``z`` with the color
``tau(z)`` of the leftmost element of its down-set, and splits ``I`` by
``(tau(y), alpha)`` where ``alpha`` compares the two representatives
``w_tau(x)`` and ``w_tau(y)`` along ``pi``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import ColorCollisionError, InternalProofViolation
from .poset import Poset, iter_bits
from .realizer import GreedyColoring, greedy_coloring
from .reversibility import dim_exact, find_alternating_cycle
from .wcol import _as_order, choose_order, weak_reach, wcol_exact


@dataclass(frozen=True)
class TauSignature:
    tau: int
    alpha: int


class SupportContext:
    """Coloring and representative tables for one poset and order."""

    def __init__(self, P: Poset, order, phi: GreedyColoring | None = None):
        self.P = P
        self.pi = _as_order(order)
        self.h = P.height()
        G = P.cover_graph
        self.radius = max(4 * self.h - 4, 0)
        self.phi = phi if phi is not None else greedy_coloring(G, self.pi, self.radius)
        reach = weak_reach(G, self.pi, max(2 * self.h - 2, 0))
        self.w: list[dict[int, int]] = []
        for z, s in enumerate(reach.sets):
            idx: dict[int, int] = {}
            for u in s:
                col = self.phi.colors[u]
                if col in idx:
                    raise ColorCollisionError(
                        f"WR[{z}] contains {idx[col]} and {u}, both colored {col}")
                idx[col] = u
            self.w.append(idx)
        self.left_down = [self.pi.leftmost(iter_bits(P.down_mask(z) | (1 << z)))
                          for z in range(P.n)]
        self.tau = [self.phi.colors[self.left_down[z]] for z in range(P.n)]

    def w_i(self, z: int, i: int) -> int | None:
        return self.w[z].get(i)

    def alpha(self, x: int, y: int) -> int:
        t = self.tau[y]
        wx, wy = self.w[x].get(t), self.w[y][t]
        if wx == wy:
            return 1
        if wx is not None and self.pi.pos[wx] < self.pi.pos[wy]:
            return 2
        return 3

    def sigma(self, pair) -> TauSignature:
        x, y = pair
        return TauSignature(self.tau[y], self.alpha(x, y))


def tau(P: Poset, order, phi: GreedyColoring, z: int) -> int:
    """Color of the leftmost element of the down-set of ``z``."""
    pi = _as_order(order)
    return phi.colors[pi.leftmost(P.downset([z]))]


def w_i(P: Poset, order, phi: GreedyColoring, z: int, i: int) -> int | None:
    """The element of ``WR_{2h-2}[z]`` colored ``i``, if any."""
    return SupportContext(P, order, phi).w_i(z, i)


def lemma6_partition(P: Poset, I: Iterable, order, ctx: SupportContext | None = None):
    """Split ``I`` into classes ``J[(tau, alpha)]``; alpha 2/3 classes are certified."""
    ctx = ctx or SupportContext(P, order)
    classes: dict[TauSignature, list] = {}
    for pair in I:
        classes.setdefault(ctx.sigma(pair), []).append(tuple(pair))
    for sig, pairs in classes.items():
        if sig.alpha in (2, 3):
            cyc = find_alternating_cycle(P, pairs)
            if cyc is not None:
                raise InternalProofViolation(f"class {sig} contains alternating cycle {cyc}")
    return dict(sorted(classes.items(), key=lambda kv: (kv[0].tau, kv[0].alpha)))


def comparability_violations(P: Poset, ctx: SupportContext) -> list[tuple[int, int]]:
    """Pairs ``x <= y`` where ``w_tau(y)(x) != w_tau(y)(y)``."""
    bad = []
    for y in range(P.n):
        t = ctx.tau[y]
        for x in iter_bits(P.down_mask(y) | (1 << y)):
            if ctx.w[x].get(t) != ctx.w[y].get(t):
                bad.append((x, y))
    return bad


@dataclass
class SupportReport:
    q: int
    I_prime: list
    dim_I: int
    dim_I_prime: int
    c: int
    tau: int
    colors: int
    dim_J: dict = field(default_factory=dict)
    dim_Itp: dict = field(default_factory=dict)
    claim7_ok: bool = True
    c_exact: int | None = None
    order_exact: bool = False

    @property
    def holds(self) -> bool:
        """``dim(I') >= dim(I)/c - 2``, in exact rational arithmetic."""
        return Fraction(self.dim_I_prime) >= Fraction(self.dim_I, self.c) - 2

    @property
    def holds_with_palette(self) -> bool:
        return Fraction(self.dim_I_prime) >= Fraction(self.dim_I, max(self.colors, 1)) - 2

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "|I'|": len(self.I_prime),
            "dim(I)": self.dim_I,
            "dim(I')": self.dim_I_prime,
            "c": self.c,
            "colors": self.colors,
            "tau": self.tau,
            "claim7": "PASS" if self.claim7_ok else "FAIL",
            "inequality": "PASS" if self.holds else "FAIL",
        }


def find_support_element(P: Poset, I: Iterable | None = None, order=None, mode: str = "auto",
                         seed: int = 0, **dim_kw) -> SupportReport:
    """Pick ``q`` following the class-maximizer argument and verify the bound.

    ``tau`` maximizes ``dim(J[tau, 1])`` and ``q`` maximizes
    ``dim(I[tau, p])`` over elements ``p`` (smallest index on ties). All
    dimensions are exact; :class:`BudgetExceededError` propagates when they
    are not computable.
    """
    pairs = [tuple(p) for p in (P.incomparable_pairs() if I is None else I)]
    h = P.height()
    r = max(4 * h - 4, 0)
    G = P.cover_graph
    if order is None:
        c, pi, exact = choose_order(G, r, mode=mode, seed=seed)
    else:
        pi = _as_order(order)
        c, exact = weak_reach(G, pi, r).max_size, False
    c_exact = c if exact else None
    if c_exact is None and G.n <= 9:
        c_exact = wcol_exact(G, r)[0]
    ctx = SupportContext(P, pi)
    classes = lemma6_partition(P, pairs, pi, ctx)
    palette = ctx.phi.palette

    def dim(S):
        return dim_exact(P, S, **dim_kw).dim if S else 1

    dim_I = dim(pairs)
    dim_J = {}
    for t in range(1, max(palette, 1) + 1):
        dim_J[t] = dim(classes.get(TauSignature(t, 1), []))
    best_tau = min(dim_J, key=lambda t: (-dim_J[t], t))
    J = classes.get(TauSignature(best_tau, 1), [])
    by_p: dict[int, list] = {}
    for x, y in J:
        by_p.setdefault(ctx.w[y][best_tau], []).append((x, y))
    dim_Itp = {p: dim(S) for p, S in sorted(by_p.items())}
    if dim_Itp:
        q = min(dim_Itp, key=lambda p: (-dim_Itp[p], p))
        claim7 = dim_J[best_tau] == dim_Itp[q]
    else:
        q, claim7 = 0, True
    I_prime = [(x, y) for x, y in pairs if P.leq(q, y)]
    if not set(by_p.get(q, [])) <= set(I_prime):
        raise InternalProofViolation("I[tau, q] is not contained in I'")
    return SupportReport(q, I_prime, dim_I, dim(I_prime), c, best_tau, palette, dim_J,
                         dim_Itp, claim7, c_exact, exact)

