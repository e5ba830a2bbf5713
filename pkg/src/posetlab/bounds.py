"""Closed-form wcol and dimension bounds, evaluated in exact integer arithmetic."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache

from .errors import BudgetExceededError, DomainError

DIGITS_LIMIT = int(os.environ.get("POSETLAB_BUDGET_DIGITS", 100_000))
TOPOLOGICAL_MINOR_NOTE = "asymptotic, no constants in paper"


@dataclass(frozen=True)
class BoundValue:
    value: int
    formula_id: str
    params: tuple

    def __post_init__(self):
        if self.value < 1:
            raise DomainError(f"{self.formula_id}{self.params} evaluated to {self.value} < 1")

    def __int__(self):
        return self.value


def binom_multiplicative(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    k = min(k, n - k)
    out = 1
    for i in range(1, k + 1):
        out = out * (n - k + i) // i
    return out


@lru_cache(maxsize=None)
def _pascal_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _pascal_row(n - 1)
    return (1,) + tuple(prev[i] + prev[i + 1] for i in range(n - 1)) + (1,)


def binom_pascal(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return _pascal_row(n)[k]


def _check(cond, msg):
    if not cond:
        raise DomainError(msg)


def _wcol_exponent(kind: str, r: int, p: int, binom) -> int:
    if kind == "genus":
        return (2 * p + binom(r + 2, 2)) * (2 * r + 1)
    if kind == "treewidth":
        return binom(p + r, p)
    if kind == "minor_free":
        return binom(r + p - 2, p - 2) * (p - 3) * (2 * r + 1)
    raise DomainError(f"unknown graph class {kind!r}")


def _validate(kind, r, p):
    _check(r >= 0, "radius must be >= 0")
    if kind == "genus":
        _check(p >= 0, "genus must be >= 0")
    elif kind == "treewidth":
        _check(p >= 0, "treewidth must be >= 0")
    elif kind == "minor_free":
        _check(p >= 4, "minor-free bound needs t >= 4")
    elif kind == "topological_minor":
        raise DomainError(f"topological-minor wcol bound is {TOPOLOGICAL_MINOR_NOTE}")
    else:
        raise DomainError(f"unknown graph class {kind!r}")


def wcol_bound(kind: str, param: int, r: int, binom=binom_multiplicative) -> BoundValue:
    """Upper bound on ``wcol_r`` for graphs of genus ``g`` / treewidth ``t`` /
    excluding ``K_t`` as a minor (``kind`` = ``genus``, ``treewidth``,
    ``minor_free``)."""
    _validate(kind, r, param)
    return BoundValue(_wcol_exponent(kind, r, param, binom), f"wcol_{kind}", (param, r))


def dim_upper_exponent(kind: str, param: int | None = None, h: int | None = None,
                       binom=binom_multiplicative) -> int:
    """Exponent ``e`` with ``dim <= 4**e``.

    ``kind="wcol"`` takes ``param=c``; the class bounds take ``(param, h)``
    and use the closed forms obtained by substituting ``r = 3h - 3``.
    """
    if kind == "wcol":
        _check(param is not None and param >= 1, "c must be >= 1")
        return param
    _check(h is not None and h >= 1, "height must be >= 1")
    _validate(kind, 0, param)
    if kind == "genus":
        return (2 * param + binom(3 * h - 1, 2)) * (6 * h - 5)
    if kind == "treewidth":
        return binom(param + 3 * h - 3, param)
    return binom(3 * h + param - 5, param - 2) * (param - 3) * (6 * h - 5)


def dim_upper_bound(kind: str, param: int | None = None, h: int | None = None,
                    binom=binom_multiplicative) -> BoundValue:
    e = dim_upper_exponent(kind, param, h, binom)
    params = (param,) if kind == "wcol" else (param, h)
    return BoundValue(1 << (2 * e), f"dim_{kind}", params)


def dim_lower_bound_construction(h: int, t: int, binom=binom_multiplicative) -> BoundValue:
    """Standard-example size ``2**C(h+t-1, t)`` realized by ``P_{h,t}``."""
    _check(h >= 1 and t >= 1, "need h >= 1 and t >= 1")
    return BoundValue(1 << binom(h + t - 1, t), "pht_k", (h, t))


def theorem3_exponent(h: int, t: int, binom=binom_multiplicative) -> int:
    """``f(h, t) = C(m + h, h)`` with ``m = C(t, 2) ** (h ** t)``."""
    _check(h >= 1 and t >= 1, "need h >= 1 and t >= 1")
    base = binom(t, 2)
    if base > 1 and h ** t * math.log2(base) > 10 * DIGITS_LIMIT:
        raise BudgetExceededError(f"m = C({t},2)^({h}^{t}) is too large to materialize")
    m = base ** (h ** t)
    return binom(m + h, h)


def theorem3_threshold(h: int, t: int, c: int, digits_limit: int = DIGITS_LIMIT,
                       binom=binom_multiplicative) -> BoundValue:
    """``(3c) ** f(h, t)``; refuses to materialize more than ``digits_limit`` digits."""
    _check(c >= 1, "c must be >= 1")
    f = theorem3_exponent(h, t, binom)
    digits = f * math.log10(3 * c)
    if digits > digits_limit:
        raise BudgetExceededError(
            f"(3c)^f(h,t) has about {digits:.4g} digits, limit {digits_limit}")
    return BoundValue((3 * c) ** f, "thm3", (h, t, c))


def format_int(value: int, digits_limit: int | None = None) -> str:
    """Decimal string, or truncated scientific notation past ``digits_limit``."""
    if digits_limit is None or value.bit_length() * math.log10(2) <= digits_limit:
        s = str(value)
        if digits_limit is None or len(s) <= digits_limit:
            return s
    shift = max(value.bit_length() - 64, 0)
    lead = math.log10(value >> shift) + shift * math.log10(2)
    e = math.floor(lead)
    return f"{10 ** (lead - e):.6f}e+{e}"
