"""Level sets of slopes in (0, 1/2] and their neighbour structure.

Level ``n`` contains every ``1/m`` (m >= 2) together with every reduced
``i/k`` for ``5 <= k <= n`` and ``2 <= i <= k/2``.  The set is infinite, so a
materialized level keeps only fractions ``>= 1/(rmax + 1)``.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "MEMBER",
    "FareyLevel",
    "farey_level",
    "neighbors",
    "verify_unimodular",
    "new_fractions",
]


class _Member:
    def __repr__(self) -> str:
        return "MEMBER"


MEMBER = _Member()
"""Returned by :func:`neighbors` when the slope already belongs to the level."""


@dataclass(frozen=True)
class FareyLevel:
    n: int
    rmax: int
    fractions: tuple[Fraction, ...]  # descending

    @property
    def cutoff(self) -> Fraction:
        return Fraction(1, self.rmax + 1)

    def __post_init__(self):
        object.__setattr__(self, "_members", frozenset(self.fractions))

    def __contains__(self, w: object) -> bool:
        return w in self._members

    def __len__(self) -> int:
        return len(self.fractions)


@lru_cache(maxsize=4096)
def farey_level(n: int, rmax: int) -> FareyLevel:
    if n < 0 or rmax < 2:
        raise ValueError(f"need n >= 0 and rmax >= 2, got n={n}, rmax={rmax}")
    cutoff = Fraction(1, rmax + 1)
    fr = {Fraction(1, m) for m in range(2, rmax + 2)}
    for k in range(5, n + 1):
        for i in range(2, k // 2 + 1):
            if gcd(i, k) == 1:
                w = Fraction(i, k)
                if w >= cutoff:
                    fr.add(w)
    return FareyLevel(n, rmax, tuple(sorted(fr, reverse=True)))


def neighbors(level: FareyLevel, slope: Fraction):
    """Enclosing interval ``(lower, upper)`` of ``slope`` in ``level``, or :data:`MEMBER`."""
    slope = Fraction(slope)
    if slope in level:
        return MEMBER
    if slope < level.cutoff or slope > Fraction(1, 2):
        raise ValueError(f"slope {slope} outside the materialized range of level {level.n}")
    asc = level.fractions[::-1]
    i = bisect_left(asc, slope)
    return asc[i - 1], asc[i]


def verify_unimodular(level: FareyLevel) -> bool:
    fr = level.fractions
    for upper, lower in zip(fr, fr[1:]):
        if lower.denominator * upper.numerator - upper.denominator * lower.numerator != 1:
            return False
    return True


@lru_cache(maxsize=None)
def new_fractions(n: int) -> tuple[tuple[Fraction, Fraction, Fraction], ...]:
    """Fractions added at level ``n`` with their enclosing pair one level down.

    Each item is ``(j/n, lower, upper)``; ``j/n`` is the mediant of the two.
    Ordered by slope, descending.
    """
    if n < 5:
        return ()
    prev = farey_level(n - 1, n)
    out = []
    for i in range(n // 2, 1, -1):
        if gcd(i, n) != 1:
            continue
        w = Fraction(i, n)
        lo, hi = neighbors(prev, w)
        out.append((w, lo, hi))
    return tuple(out)
