"""Plurigenera and volume of a weighted hypersurface from its Hilbert series.

For a well-formed quasi-smooth ``X_d`` in ``P(w0, ..., w4)`` with amplitude
``a = d - sum(w)``, the plurigenus ``P_m`` is the coefficient of ``t^(m a)``
in ``(1 - t^d) / prod(1 - t^wi)`` and the volume is ``d a^3 / prod(wi)``.
Quasi-smoothness is not checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, prod
from functools import reduce

from .formal import ChiVector

__all__ = ["WeightedHypersurface", "poincare_coeff", "plurigenera", "wps_volume", "chi_vector"]


@dataclass(frozen=True)
class WeightedHypersurface:
    weights: tuple[int, ...]
    degree: int

    def __post_init__(self):
        w = tuple(sorted(int(x) for x in self.weights))
        if len(w) != 5 or min(w) < 1 or self.degree < 1:
            raise ValueError("need five positive weights and a positive degree")
        object.__setattr__(self, "weights", w)
        for sub in combinations(w, 4):
            if reduce(gcd, sub) != 1:
                raise ValueError(f"weights {w} are not well formed: gcd{sub} > 1")
        for sub in combinations(w, 3):
            if self.degree % reduce(gcd, sub):
                raise ValueError(f"X_{self.degree} in P{w} is not well formed: gcd{sub} does not divide d")

    @property
    def amplitude(self) -> int:
        return self.degree - sum(self.weights)


def _series(h: WeightedHypersurface, top: int) -> list[int]:
    c = [0] * (top + 1)
    c[0] = 1
    for w in h.weights:
        for k in range(w, top + 1):
            c[k] += c[k - w]
    for k in range(top, h.degree - 1, -1):
        c[k] -= c[k - h.degree]
    return c


def poincare_coeff(h: WeightedHypersurface, m: int) -> int:
    k = m * h.amplitude
    if k < 0:
        raise ValueError("m * amplitude must be non-negative")
    return _series(h, k)[k]


def plurigenera(h: WeightedHypersurface, upto: int) -> list[int]:
    """``[P_1, ..., P_upto]``."""
    a = h.amplitude
    s = _series(h, upto * max(a, 0))
    return [s[m * a] for m in range(1, upto + 1)]


def wps_volume(h: WeightedHypersurface) -> Fraction:
    a = h.amplitude
    if a < 1:
        raise ValueError("volume formula needs amplitude >= 1")
    return Fraction(h.degree * a**3, prod(h.weights))


def chi_vector(h: WeightedHypersurface, upto: int, chi: int = 1) -> ChiVector:
    """Plurigenera as ``chi_m`` (m >= 2); ``chi`` must be supplied by the caller."""
    return ChiVector(chi, tuple(plurigenera(h, upto)[1:]))
