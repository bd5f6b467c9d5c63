"""Canonical sequence of prime unpackings ``B(0) >= B(5) >= ... >= B``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .basket import Basket, delta, pack
from .farey import MEMBER, farey_level, neighbors, new_fractions

__all__ = [
    "InconsistencyError",
    "CanonicalSequence",
    "initial_basket",
    "step_basket",
    "unpack_step",
    "epsilon",
    "level_packings",
    "sequence",
]


class InconsistencyError(RuntimeError):
    """Two independent evaluations of the same quantity disagree (a bug, not bad input)."""


def _split(b: int, r: int, lo: Fraction, hi: Fraction) -> tuple[tuple[tuple[int, int], int], ...]:
    q1, p1 = lo.numerator, lo.denominator
    q2, p2 = hi.numerator, hi.denominator
    return (((q1, p1), r * q2 - b * p2), ((q2, p2), b * p1 - r * q1))


def step_basket(basket: Basket, n: int) -> Basket:
    """The ``n``-th member of the canonical sequence, computed from ``basket`` directly."""
    if len(basket) == 0:
        return basket
    level = farey_level(n if n >= 5 else 0, max(basket.rmax, 2))
    counts: dict[tuple[int, int], int] = {}
    for p in basket:
        nb = neighbors(level, p.slope)
        if nb is MEMBER:
            counts[p.key] = counts.get(p.key, 0) + p.mult
            continue
        for key, c in _split(p.b, p.r, *nb):
            counts[key] = counts.get(key, 0) + p.mult * c
    return Basket(counts)


def initial_basket(basket: Basket) -> Basket:
    """Maximal unpacking into entries of type ``(1, m)``."""
    return step_basket(basket, 0)


def unpack_step(basket_n: Basket, n: int) -> Basket:
    """Undo the level-``n`` prime packings of a basket whose slopes lie in level ``n``.

    This is the incremental route from ``B(n)`` back to ``B(n-1)``; it agrees
    with ``step_basket(B, n - 1)``.
    """
    counts = basket_n.counts()
    for w, lo, hi in new_fractions(n):
        m = counts.pop((w.numerator, w.denominator), 0)
        if m:
            for f in (lo, hi):
                key = (f.numerator, f.denominator)
                counts[key] = counts.get(key, 0) + m
    return Basket(counts)


def level_packings(basket: Basket, n: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Prime packings (one list item per packing) taking ``B(n-1)`` to ``B(n)``."""
    bn = step_basket(basket, n)
    out = []
    for w, lo, hi in new_fractions(n):
        m = bn.mult_at(w)
        out.extend([((hi.numerator, hi.denominator), (lo.numerator, lo.denominator))] * m)
    return out


def epsilon(basket: Basket, n: int) -> int:
    """Number of level-``n`` prime packings between ``B(n-1)`` and ``B(n)``.

    Computed twice, as a count of new ``(j, n)`` entries and as a drop of the
    level-``n`` delta, and the two must agree.
    """
    if n < 1:
        raise ValueError(f"epsilon needs n >= 1, got {n}")
    bn = step_basket(basket, n)
    by_count = sum(p.mult for p in bn if p.r == n and p.b > 1)
    by_delta = delta(step_basket(basket, n - 1), n) - delta(bn, n)
    if by_count != by_delta:
        raise InconsistencyError(
            f"epsilon_{n} mismatch for {basket}: count {by_count} vs delta drop {by_delta}"
        )
    return by_count


@dataclass(frozen=True)
class CanonicalSequence:
    base: Basket
    steps: tuple[tuple[int, Basket, int], ...]  # (level, B(level), epsilon_level)
    stabilization_level: int

    def at(self, n: int) -> Basket:
        """``B(n)`` for any ``n >= 0`` (levels 1-4 coincide with level 0)."""
        if n >= self.stabilization_level:
            return self.base
        return step_basket(self.base, n)

    @property
    def epsilons(self) -> dict[int, int]:
        return {lvl: eps for lvl, _, eps in self.steps if lvl >= 5}


def sequence(basket: Basket, upto: int) -> CanonicalSequence:
    steps = [(0, initial_basket(basket), 0)]
    for n in range(5, upto + 1):
        steps.append((n, step_basket(basket, n), epsilon(basket, n)))
    stab = None
    for lvl, b, _ in steps:
        if b == basket:
            stab = lvl
            break
    if stab is None:
        n = max(upto + 1, 5)
        while step_basket(basket, n) != basket:
            n += 1
            if n > max(basket.rmax, 5):
                raise InconsistencyError(f"canonical sequence of {basket} does not stabilize")
        stab = n
    return CanonicalSequence(basket, tuple(steps), stab)


def apply_packings(basket: Basket, packings) -> Basket:
    for e1, e2 in packings:
        basket = pack(basket, e1, e2)
    return basket
