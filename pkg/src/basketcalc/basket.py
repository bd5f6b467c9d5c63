"""Baskets of terminal quotient singularities and their numerical invariants.

A singularity of type 1/r(1, -1, b) is recorded as the pair ``(b, r)`` with
``0 < b <= r/2`` and ``gcd(b, r) = 1``.  A basket is a finite multiset of such
pairs.  All invariants are exact: integers where they are integral, and
:class:`fractions.Fraction` otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Iterator, Mapping

__all__ = [
    "BasketError",
    "Pair",
    "Basket",
    "canonicalize",
    "union",
    "delta_pair",
    "delta",
    "sigma",
    "sigma_prime",
    "rr_correction",
    "pack",
    "packing_defect",
    "is_prime_packing",
    "prime_packing_candidates",
    "basket_from_json",
    "basket_to_json",
]


class BasketError(ValueError):
    """Raised for malformed basket input or an impossible packing."""


@dataclass(frozen=True, order=True)
class Pair:
    b: int
    r: int
    mult: int = 1

    @property
    def slope(self) -> Fraction:
        return Fraction(self.b, self.r)

    @property
    def key(self) -> tuple[int, int]:
        return (self.b, self.r)


def _sort_key(br: tuple[int, int]) -> tuple[Fraction, int]:
    b, r = br
    return (-Fraction(b, r), r)


class Basket:
    """Immutable canonical basket.

    Entries are kept reduced, merged and ordered by slope descending (ties,
    which cannot occur for reduced pairs, by ``r`` ascending).  Instances hash
    and compare by content, so they can be used as dictionary keys.
    """

    def __init__(self, counts: Mapping[tuple[int, int], int] | None = None):
        clean: dict[tuple[int, int], int] = {}
        for (b, r), m in (counts or {}).items():
            if m < 0:
                raise BasketError(f"negative multiplicity {m} for {(b, r)}")
            if m == 0:
                continue
            if not (0 < b and 2 * b <= r) or gcd(b, r) != 1:
                raise BasketError(f"pair {(b, r)} is not canonical")
            clean[(b, r)] = clean.get((b, r), 0) + m
        keys = sorted(clean, key=_sort_key)
        self._pairs = tuple(Pair(b, r, clean[(b, r)]) for b, r in keys)
        self._counts = {k: clean[k] for k in keys}
        self._hash = hash(self._pairs)

    @classmethod
    def of(cls, *entries: tuple[int, ...]) -> "Basket":
        """Build from ``(b, r)`` or ``(b, r, mult)`` tuples, canonicalizing."""
        return canonicalize(e if len(e) == 3 else (e[0], e[1], 1) for e in entries)

    @property
    def pairs(self) -> tuple[Pair, ...]:
        return self._pairs

    def counts(self) -> dict[tuple[int, int], int]:
        return dict(self._counts)

    def mult(self, b: int, r: int) -> int:
        return self._counts.get((b, r), 0)

    def mult_at(self, slope: Fraction) -> int:
        """Multiplicity of the entry with the given reduced slope."""
        return self._counts.get((slope.numerator, slope.denominator), 0)

    def __iter__(self) -> Iterator[Pair]:
        return iter(self._pairs)

    def __len__(self) -> int:
        return len(self._pairs)

    def __contains__(self, br: object) -> bool:
        return br in self._counts

    @property
    def size(self) -> int:
        """Number of single baskets, counted with multiplicity."""
        return sum(p.mult for p in self._pairs)

    @property
    def rmax(self) -> int:
        return max((p.r for p in self._pairs), default=1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Basket):
            return NotImplemented
        return self._pairs == other._pairs

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Basket({self})"

    def __str__(self) -> str:
        parts = []
        for p in self._pairs:
            parts.append(f"({p.b},{p.r})" if p.mult == 1 else f"{p.mult}x({p.b},{p.r})")
        return "{" + ", ".join(parts) + "}"

    def as_triples(self) -> list[list[int]]:
        return [[p.b, p.r, p.mult] for p in self._pairs]

    @cached_property
    def sigma(self) -> int:
        return sum(p.mult * p.b for p in self._pairs)

    @cached_property
    def sigma_prime(self) -> Fraction:
        return sum((Fraction(p.mult * p.b * p.b, p.r) for p in self._pairs), Fraction(0))


def canonicalize(raw: Iterable[tuple[int, int, int]]) -> Basket:
    """Reduce generalized pairs and merge multiplicities.

    A non-coprime ``(mb, mr)`` becomes ``m x (b, r)``; this leaves sigma,
    sigma' and every delta unchanged.
    """
    counts: dict[tuple[int, int], int] = {}
    for entry in raw:
        try:
            b, r, m = (int(x) for x in entry)
        except (TypeError, ValueError) as exc:
            raise BasketError(f"malformed basket entry {entry!r}") from exc
        if b <= 0 or r <= 0 or m <= 0:
            raise BasketError(f"entries must be positive, got {(b, r, m)}")
        if b >= r:
            raise BasketError(f"need b < r, got {(b, r)}")
        g = gcd(b, r)
        b, r, m = b // g, r // g, m * g
        if 2 * b > r:
            raise BasketError(f"slope {b}/{r} exceeds 1/2")
        counts[(b, r)] = counts.get((b, r), 0) + m
    return Basket(counts)


def union(b1: Basket, b2: Basket) -> Basket:
    counts = b1.counts()
    for k, m in b2.counts().items():
        counts[k] = counts.get(k, 0) + m
    return Basket(counts)


def delta_pair(b: int, r: int, n: int) -> int:
    """Integer correction ``delta*b*n - (delta^2 + delta) r / 2`` with ``delta = floor(bn/r)``."""
    d = (b * n) // r
    return d * b * n - (d * d + d) * r // 2


def delta(basket: Basket, n: int) -> int:
    return sum(p.mult * delta_pair(p.b, p.r, n) for p in basket)


def sigma(basket: Basket) -> int:
    return basket.sigma


def sigma_prime(basket: Basket) -> Fraction:
    return basket.sigma_prime


def rr_correction(basket: Basket, m: int) -> Fraction:
    """Singularity correction term ``l(m)`` of the plurigenus formula."""
    total = Fraction(0)
    for p in basket:
        acc = 0
        for j in range(1, m):
            res = (j * p.b) % p.r
            acc += res * (p.r - res)
        total += Fraction(p.mult * acc, 2 * p.r)
    return total


def packing_defect(e1: tuple[int, int], e2: tuple[int, int]) -> Fraction:
    """Drop of sigma' when ``e1`` and ``e2`` are packed together."""
    (b1, r1), (b2, r2) = e1, e2
    return Fraction((r1 * b2 - r2 * b1) ** 2, r1 * r2 * (r1 + r2))


def pack(basket: Basket, e1: tuple[int, int], e2: tuple[int, int], times: int = 1) -> Basket:
    """Replace ``times`` copies of ``e1`` and ``e2`` by their sum ``(b1+b2, r1+r2)``."""
    e1, e2 = tuple(e1), tuple(e2)
    need = {e1: times} if e1 != e2 else {e1: 2 * times}
    if e1 != e2:
        need[e2] = times
    counts = basket.counts()
    for k, m in need.items():
        if counts.get(k, 0) < m:
            raise BasketError(f"entry {k} not available {m} times in {basket}")
        counts[k] -= m
    b, r = e1[0] + e2[0], e1[1] + e2[1]
    g = gcd(b, r)
    key = (b // g, r // g)
    counts[key] = counts.get(key, 0) + g * times
    return Basket(counts)


def is_prime_packing(e1: tuple[int, int], e2: tuple[int, int]) -> tuple[bool, int]:
    (b1, r1), (b2, r2) = e1, e2
    return abs(b1 * r2 - b2 * r1) == 1, r1 + r2


def prime_packing_candidates(
    basket: Basket, n: int
) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Unordered entry pairs of ``basket`` forming a prime packing of level ``n``.

    Each pair is returned with the larger slope first; the list is ordered by
    the slope of the packed entry, descending.
    """
    keys = [p.key for p in basket]
    found = []
    for i, e1 in enumerate(keys):
        for e2 in keys[i + 1:]:
            if e1[1] + e2[1] != n:
                continue
            if abs(e1[0] * e2[1] - e2[0] * e1[1]) == 1:
                found.append((e1, e2))
    found.sort(key=lambda pr: -Fraction(pr[0][0] + pr[1][0], n))
    return found


def basket_from_json(payload: str | Mapping) -> Basket:
    """Parse the ``{"pairs": [[b, r, mult], ...]}`` interchange format."""
    data = json.loads(payload) if isinstance(payload, str) else payload
    if not isinstance(data, Mapping) or "pairs" not in data:
        raise BasketError('basket JSON must be an object with a "pairs" list')
    pairs = data["pairs"]
    if not isinstance(pairs, list):
        raise BasketError('"pairs" must be a list')
    triples = []
    for entry in pairs:
        if not isinstance(entry, list) or len(entry) not in (2, 3):
            raise BasketError(f"bad pair entry {entry!r}")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in entry):
            raise BasketError(f"pair entries must be integers: {entry!r}")
        triples.append(tuple(entry) if len(entry) == 3 else (entry[0], entry[1], 1))
    return canonicalize(triples)


def basket_to_json(basket: Basket) -> dict:
    return {"pairs": basket.as_triples()}
