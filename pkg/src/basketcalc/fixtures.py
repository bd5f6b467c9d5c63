"""Reference formal baskets with known plurigenera, used by tests and the p24 trace.

Names encode the search branch: ``d`` is the first index with ``P_d > 0``,
the digit groups are the small plurigenera that split the branch
(``P_7 P_10 P_11`` for ``d = 6``, ``P_9 P_11`` for ``d = 5``), and ``chi`` is
``chi(O)``.  Suffixes mark a descendant of the level-12 basket or a rejected
level-12 alternative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .basket import Basket

__all__ = ["Fixture", "FIXTURES", "by_name"]


@dataclass(frozen=True)
class Fixture:
    name: str
    chi: int
    basket: Basket
    p24: int | None = None
    k3: Fraction | None = None
    k3_sign: int | None = None  # -1, 0, 1 when only the sign is asserted
    descendant_of: str | None = None


_B = Basket.of

FIXTURES: tuple[Fixture, ...] = (
    Fixture("d10-chi2", 2, _B((1, 2, 5), (3, 7), (2, 5, 3), (1, 3, 3), (3, 11)),
            p24=8, k3=Fraction(3, 770)),
    Fixture("d6-010-chi3", 3, _B((1, 2, 9), (3, 7, 2), (2, 5), (4, 11), (1, 3, 4), (2, 7, 2), (1, 5)),
            p24=6, k3_sign=1),
    Fixture("d6-010-chi3-packed", 3, _B((1, 2, 9), (3, 7, 2), (2, 5), (5, 14), (1, 3, 3), (2, 7, 2), (1, 5)),
            k3=Fraction(0), descendant_of="d6-010-chi3"),
    Fixture("d6-110-chi2", 2, _B((1, 2, 5), (3, 7, 2), (3, 8), (1, 3), (3, 10), (2, 7)),
            p24=4, k3_sign=1),
    Fixture("d6-110-chi2-a", 2, _B((1, 2, 5), (3, 7, 2), (3, 8), (1, 3), (5, 17)),
            p24=3, k3_sign=1, descendant_of="d6-110-chi2"),
    Fixture("d6-110-chi2-b", 2, _B((1, 2, 5), (3, 7, 2), (3, 8), (4, 13), (2, 7)),
            k3_sign=-1, descendant_of="d6-110-chi2"),
    Fixture("d6-110-chi3", 3, _B((1, 2, 7), (4, 9), (3, 7), (2, 5, 2), (3, 8), (1, 3, 3), (2, 7, 3)),
            p24=8, k3_sign=1),
    Fixture("d6-110-chi3-a", 3, _B((1, 2, 7), (7, 16), (2, 5, 2), (3, 8), (1, 3, 3), (2, 7, 3)),
            p24=6, k3_sign=1, descendant_of="d6-110-chi3"),
    Fixture("d6-110-chi3-b", 3, _B((1, 2, 7), (4, 9), (3, 7), (2, 5), (5, 13), (1, 3, 3), (2, 7, 3)),
            p24=4, k3_sign=1, descendant_of="d6-110-chi3"),
    Fixture("d6-111-chi2", 2, _B((1, 2, 5), (3, 7, 2), (4, 11), (1, 3), (2, 7, 2)),
            p24=6, k3_sign=1),
    Fixture("d6-111-chi2-packed", 2, _B((1, 2, 5), (3, 7, 2), (5, 14), (2, 7, 2)),
            k3=Fraction(0), descendant_of="d6-111-chi2"),
    Fixture("d5-00-chi2", 2, _B((1, 2, 2), (3, 7, 2), (2, 5, 3), (3, 8), (1, 3), (2, 7)),
            p24=4, k3_sign=1),
    Fixture("d5-00-chi2-alt", 2, _B((1, 2, 2), (3, 7), (5, 12), (2, 5, 2), (3, 8), (1, 3), (2, 7)),
            k3_sign=-1),
    Fixture("d5-00-chi3", 3, _B((1, 2, 4), (3, 7, 3), (2, 5, 4), (3, 8), (1, 3, 3), (3, 11)),
            p24=2, k3_sign=1),
    Fixture("d5-00-chi3-alt", 3, _B((1, 2, 4), (3, 7, 3), (2, 5, 4), (4, 11), (1, 3, 2), (2, 7), (1, 4)),
            k3_sign=-1),
    Fixture("d5-10-chi2", 2, _B((1, 2), (4, 9), (3, 7), (2, 5, 4), (1, 3, 2), (2, 7)),
            p24=5, k3_sign=1),
    Fixture("d5-10-chi2-packed", 2, _B((1, 2), (7, 16), (2, 5, 4), (1, 3, 2), (2, 7)),
            p24=3, k3_sign=1, descendant_of="d5-10-chi2"),
    Fixture("d5-10-chi2-alt", 2, _B((1, 2), (4, 9), (5, 12), (2, 5, 3), (1, 3, 2), (2, 7)),
            k3_sign=-1),
    Fixture("d5-10-chi3", 3, _B((1, 2, 3), (4, 9), (3, 7, 2), (2, 5, 5), (1, 3, 4), (3, 11)),
            p24=3, k3_sign=1),
    Fixture("d5-10-chi3-alt", 3, _B((1, 2, 2), (5, 11), (3, 7, 2), (2, 5, 5), (1, 3, 4), (2, 7), (1, 4)),
            k3_sign=-1),
    Fixture("d5-10-chi3-packed", 3, _B((1, 2, 3), (7, 16), (3, 7), (2, 5, 5), (1, 3, 4), (3, 11)),
            k3_sign=-1, descendant_of="d5-10-chi3"),
)


def by_name(name: str) -> Fixture:
    for f in FIXTURES:
        if f.name == name:
            return f
    raise KeyError(name)
