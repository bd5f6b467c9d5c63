"""Formal baskets, Riemann-Roch plurigenera and the inversion ladder.

A formal basket is a triple ``(B, chi, chi2)``.  Its volume and Euler
characteristics ``chi_m`` follow formally from Reid's plurigenus formula.
Conversely, an initial segment ``chi, chi_2, ..., chi_13`` determines sigma,
``sigma' - K^3``, the deltas up to level 12, the initial basket and the first
steps of the canonical sequence as integer linear forms; those forms live in
the tables below.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .basket import Basket, delta, rr_correction

__all__ = [
    "FormalBasket",
    "ChiVector",
    "InversionLadder",
    "PackingChoice",
    "NegativeCoefficient",
    "LinearForm",
    "k3",
    "chi_seq",
    "chi_closed",
    "rr_invert",
    "assemble_ladder",
    "upper_forms_apply",
    "tail_inequality",
    "tail_dict",
]


@dataclass(frozen=True)
class FormalBasket:
    basket: Basket
    chi: int
    chi2: int


@dataclass(frozen=True)
class ChiVector:
    """``chi`` together with ``chi_2, chi_3, ...`` (``values[0]`` is ``chi_2``)."""

    chi: int
    values: tuple[int, ...]

    def __getitem__(self, m: int) -> int:
        if m < 2 or m > self.horizon:
            raise IndexError(f"chi_{m} outside 2..{self.horizon}")
        return self.values[m - 2]

    @property
    def horizon(self) -> int:
        return len(self.values) + 1

    def get(self, m: int, default=None):
        return self.values[m - 2] if 2 <= m <= self.horizon else default

    def truncate(self, horizon: int) -> "ChiVector":
        return ChiVector(self.chi, self.values[: horizon - 1])

    def as_dict(self) -> dict[int, int]:
        return {m: self[m] for m in range(2, self.horizon + 1)}


class NegativeCoefficient(ValueError):
    """A ladder coefficient went negative: the data describe no basket."""

    def __init__(self, level: int, entry: tuple[int, int], value: int):
        super().__init__(f"n^{level}_{entry[0]},{entry[1]} = {value} < 0")
        self.level = level
        self.entry = entry
        self.value = value


# ---------------------------------------------------------------------------
# forward direction


def k3(fb: FormalBasket) -> Fraction:
    b = fb.basket
    return -b.sigma + b.sigma_prime + 6 * fb.chi + 2 * fb.chi2


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"{what} = {x} is not an integer")
    return x.numerator


def chi_seq(fb: FormalBasket, mmax: int) -> ChiVector:
    """``chi_2 .. chi_mmax`` by the difference recursion."""
    if mmax < 3:
        raise ValueError("mmax must be at least 3")
    b = fb.basket
    s = b.sigma
    km = k3(fb) - b.sigma_prime
    vals = [fb.chi2, -s + 10 * fb.chi + 5 * fb.chi2]
    for m in range(3, mmax):
        step = Fraction(m * m, 2) * km + Fraction(m * s, 2) - 2 * fb.chi + delta(b, m)
        vals.append(vals[-1] + _as_int(step, f"chi_{m + 1} - chi_{m}"))
    return ChiVector(fb.chi, tuple(vals))


def chi_closed(fb: FormalBasket, m: int) -> int:
    """``chi_m`` straight from the plurigenus formula with its correction term."""
    if m < 2:
        raise ValueError("m must be at least 2")
    val = (
        Fraction(m * (m - 1) * (2 * m - 1), 12) * k3(fb)
        - (2 * m - 1) * fb.chi
        + rr_correction(fb.basket, m)
    )
    return _as_int(val, f"chi_{m}")


# ---------------------------------------------------------------------------
# linear forms

_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*([a-z]\w*)?")


class LinearForm:
    """Integer linear form parsed from text such as ``"2chi - c3 + 2c5 - s5"``.

    Variables: ``chi``, ``c2``..``c13`` (the ``chi_m``), ``s5`` (tail sum),
    ``n5``..``n11`` and ``n12p`` (tail entries, the last one summing r >= 12),
    ``eta``, ``zeta``, ``alpha``, ``beta``.
    """

    __slots__ = ("coeffs", "text")

    def __init__(self, text: str):
        self.text = text
        coeffs: dict[str, int] = {}
        pos = 0
        src = text.strip()
        while pos < len(src):
            m = _TERM.match(src, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse {text!r} at {pos}")
            sign, num, var = m.groups()
            if not num and not var:
                raise ValueError(f"cannot parse {text!r} at {pos}")
            c = int(num) if num else 1
            if sign == "-":
                c = -c
            key = var or "1"
            coeffs[key] = coeffs.get(key, 0) + c
            pos = m.end()
        self.coeffs = {k: v for k, v in coeffs.items() if v}

    def __call__(self, env: Mapping[str, int]) -> int:
        total = 0
        for k, c in self.coeffs.items():
            total += c * (1 if k == "1" else env.get(k, 0))
        return total

    def __repr__(self) -> str:
        return f"LinearForm({self.text!r})"


def _forms(table: Mapping) -> dict:
    return {k: LinearForm(v) for k, v in table.items()}


INVARIANTS = _forms({
    "tau": "4chi + 3c2 - c3",
    "sigma": "10chi + 5c2 - c3",
})

DELTAS = _forms({
    3: "5chi + 6c2 - 4c3 + c4",
    4: "14chi + 14c2 - 6c3 - c4 + c5",
    5: "27chi + 25c2 - 10c3 - c5 + c6",
    6: "44chi + 39c2 - 15c3 - c6 + c7",
    7: "65chi + 56c2 - 21c3 - c7 + c8",
    8: "90chi + 76c2 - 28c3 - c8 + c9",
    9: "119chi + 99c2 - 36c3 - c9 + c10",
    10: "152chi + 125c2 - 45c3 - c10 + c11",
    11: "189chi + 154c2 - 55c3 - c11 + c12",
    12: "230chi + 186c2 - 66c3 - c12 + c13",
})

INITIAL = _forms({
    (1, 2): "5chi + 6c2 - 4c3 + c4",
    (1, 3): "4chi + 2c2 + 2c3 - 3c4 + c5",
    (1, 4): "chi - 3c2 + c3 + 2c4 - c5 - s5",
})

EPSILONS = _forms({
    "eps": "2s5 - n5",
    5: "2chi - c3 + 2c5 - c6 - s5",
    6: "-3c2 - c3 + c4 + c5 + c6 - c7 - 2s5 + n5",
    7: "chi - c2 - c3 + c6 + c7 - c8 - 2s5 + 2n5 + n6",
    8: "-2c2 - c3 - c4 + c5 + c6 + c8 - c9 - 3s5 + 3n5 + 2n6 + n7",
    9: "-2c2 - 2c3 + c4 + c5 - c7 + c8 + c9 - c10 - 3s5 + eta + 2n5 + 2n6 + 2n7 + n8",
    10: "-5c2 - c3 + 2c6 + c10 - c11 - 6s5 - eta + 5n5 + 4n6 + 3n7 + 2n8 + n9",
    12: "-chi - 5c2 - 3c3 + 2c5 + c6 - c7 + c8 + c12 - c13 - 8s5 + eta"
        " + 7n5 + 5n6 + 5n7 + 4n8 + 3n9 + 2n10 + n11",
})

INEQ_LHS = LinearForm("2c5 + 3c6 + c8 + c10 + c12")
INEQ_RHS = LinearForm("chi + 10c2 + 4c3 + c7 + c11 + c13")
REMAINDER = LinearForm("2n5 + 5n6 + 6n7 + 8n8 + 10n9 + 12n10 + 13n11 + 14n12p")

LEVEL5 = _forms({
    (1, 2): "3chi + 6c2 - 3c3 + c4 - 2c5 + c6 + s5",
    (2, 5): "2chi - c3 + 2c5 - c6 - s5",
    (1, 3): "2chi + 2c2 + 3c3 - 3c4 - c5 + c6 + s5",
    (1, 4): "chi - 3c2 + c3 + 2c4 - c5 - s5",
})

LEVEL7 = _forms({
    (1, 2): "2chi + 7c2 - 2c3 + c4 - 2c5 - c7 + c8 + 3s5 - 2n5 - n6 + eta",
    (3, 7): "chi - c2 - c3 + c6 + c7 - c8 - 2s5 + 2n5 + n6 - eta",
    (2, 5): "chi + c2 + 2c5 - 2c6 - c7 + c8 + s5 - 2n5 - n6 + eta",
    (1, 3): "2chi + 2c2 + 3c3 - 3c4 - c5 + c6 + s5 - eta",
    (2, 7): "eta",
    (1, 4): "chi - 3c2 + c3 + 2c4 - c5 - s5 - eta",
})

# Valid when chi_2 = 0 and the initial basket has no (1, r) with r >= 6.
UPPER_EPSILONS = _forms({
    7: "chi - c3 + c6 + c7 - c8",
    8: "-c3 - c4 + c5 + c6 + c8 - c9",
    9: "-2c3 + c4 + c5 - c7 + c8 + c9 - c10 - n5 + eta",
    10: "-c3 + 2c6 + c10 - c11 - n5 - eta",
    11: "chi - c3 + c4 - c7 + c9 + c11 - c12 - n5 - zeta",
    12: "-chi - 3c3 + 2c5 + c6 - c7 + c8 + c12 - c13 - n5 + eta",
})

_N12 = "2chi - 2c3 + c4 - 2c5 - c7 + c8 + n5 + eta"
_N37 = "chi - c3 + c6 + c7 - c8 - eta"
_N25 = "chi + c3 + c4 + c5 - 3c6 - c7 + c9 - n5 + eta"
_N38 = "-c3 - c4 + c5 + c6 + c8 - c9"
_N13 = "2chi + 4c3 - 2c4 - 2c5 - c8 + c9 + n5 - eta"
_N14 = "chi + 3c3 + c4 - 2c5 + c7 - c8 - c9 + c10 - 2eta + zeta"
_N29 = "-2c3 + c4 + c5 - c7 + c8 + c9 - c10 - n5 + eta - zeta"
_N15 = "2c3 - c4 - c5 + c7 - c8 - c9 + c10 + 2n5 - eta + zeta"
_N13_10 = "2chi + 5c3 - 2c4 - 2c5 - 2c6 - c8 + c9 - c10 + c11 + 2n5"
_N310 = "-c3 + 2c6 + c10 - c11 - n5 - eta"

UPPER_LEVELS = {
    7: _forms({
        (1, 2): "2chi - 2c3 + c4 - 2c5 - c7 + c8 + n5 + eta",
        (3, 7): "chi - c3 + c6 + c7 - c8 - eta",
        (2, 5): "chi + 2c5 - 2c6 - c7 + c8 - n5 + eta",
        (1, 3): "2chi + 3c3 - 3c4 - c5 + c6 + n5 - eta",
        (2, 7): "eta",
        (1, 4): "chi + c3 + 2c4 - c5 - n5 - eta",
        (1, 5): "n5",
    }),
    8: _forms({
        (1, 2): _N12,
        (3, 7): _N37,
        (2, 5): _N25,
        (3, 8): _N38,
        (1, 3): _N13,
        (2, 7): "eta",
        (1, 4): "chi + c3 + 2c4 - c5 - n5 - eta",
        (1, 5): "n5",
    }),
    9: _forms({
        (1, 2): _N12 + " - zeta",
        (4, 9): "zeta",
        (3, 7): _N37 + " - zeta",
        (2, 5): _N25,
        (3, 8): _N38,
        (1, 3): _N13,
        (2, 7): "eta",
        (1, 4): _N14,
        (2, 9): _N29,
        (1, 5): _N15,
    }),
    10: _forms({
        (1, 2): _N12 + " - zeta",
        (4, 9): "zeta",
        (3, 7): _N37 + " - zeta",
        (2, 5): _N25,
        (3, 8): _N38,
        (1, 3): _N13_10,
        (3, 10): _N310,
        (2, 7): "c3 - 2c6 - c10 + c11 + n5 + 2eta",
        (1, 4): _N14,
        (2, 9): _N29,
        (1, 5): _N15,
    }),
    11: _forms({
        (1, 2): _N12 + " - zeta - alpha",
        (5, 11): "alpha",
        (4, 9): "zeta - alpha",
        (3, 7): _N37 + " - zeta",
        (2, 5): _N25,
        (3, 8): _N38 + " - beta",
        (4, 11): "beta",
        (1, 3): _N13_10 + " - beta",
        (3, 10): _N310,
        (2, 7): "-chi + 2c3 - c4 - 2c6 + c7 - c9 - c10 + c12 + 2n5 + 2eta + zeta + alpha + beta",
        (3, 11): "chi - c3 + c4 - c7 + c9 + c11 - c12 - n5 - zeta - alpha - beta",
        (1, 4): "4c3 - 2c5 + 2c7 - c8 - 2c9 + c10 - c11 + c12 + n5 - 2eta + 2zeta + alpha + beta",
        (2, 9): _N29,
        (1, 5): _N15,
    }),
    12: _forms({
        (1, 2): _N12 + " - zeta - alpha",
        (5, 11): "alpha",
        (4, 9): "zeta - alpha",
        (3, 7): "2chi + 2c3 - 2c5 + 2c7 - 2c8 - c12 + c13 - 2eta - zeta + n5",
        (5, 12): "-chi - 3c3 + 2c5 + c6 - c7 + c8 + c12 - c13 + eta - n5",
        (2, 5): "2chi + 4c3 + c4 - c5 - 4c6 - c8 + c9 - c12 + c13",
        (3, 8): _N38 + " - beta",
        (4, 11): "beta",
        (1, 3): _N13_10 + " - beta",
        (3, 10): _N310,
        (2, 7): "-chi + 2c3 - c4 - 2c6 + c7 - c9 - c10 + c12 + 2n5 + 2eta + zeta + alpha + beta",
        (3, 11): "chi - c3 + c4 - c7 + c9 + c11 - c12 - n5 - zeta - alpha - beta",
        (1, 4): "4c3 - 2c5 + 2c7 - c8 - 2c9 + c10 - c11 + c12 + n5 - 2eta + 2zeta + alpha + beta",
        (2, 9): _N29,
        (1, 5): _N15,
    }),
}


# ---------------------------------------------------------------------------
# inverse direction


def tail_dict(n0_tail) -> dict[int, int]:
    """Normalize a tail given as ``{r: n}`` or as a list starting at ``r = 5``."""
    if isinstance(n0_tail, Mapping):
        out = {int(r): int(v) for r, v in n0_tail.items()}
    else:
        out = {5 + i: int(v) for i, v in enumerate(n0_tail or ())}
    for r, v in out.items():
        if r < 5:
            raise ValueError(f"tail starts at r = 5, got r = {r}")
        if v < 0:
            raise ValueError(f"negative tail entry n0_1,{r} = {v}")
    return {r: v for r, v in sorted(out.items()) if v}


def _env(cv: ChiVector, tail: Mapping[int, int], pc: "PackingChoice | None" = None) -> dict:
    env = {"chi": cv.chi}
    for m in range(2, min(cv.horizon, 13) + 1):
        env[f"c{m}"] = cv[m]
    env["s5"] = sum(tail.values())
    for r, v in tail.items():
        key = f"n{r}" if r <= 11 else "n12p"
        env[key] = env.get(key, 0) + v
    if pc is not None:
        env.update(eta=pc.eta, zeta=pc.zeta, alpha=pc.alpha, beta=pc.beta)
    return env


@dataclass(frozen=True)
class PackingChoice:
    eta: int = 0
    zeta: int = 0
    alpha: int = 0
    beta: int = 0


@dataclass(frozen=True)
class InversionLadder:
    tau: int
    sigma: int
    deltas: dict[int, int]
    n0: dict[int, int]
    sigma5: int
    eps: int
    epsilons: dict[int, int]  # levels 5, 6, 7, 8, 9, 10, 12
    Rterm: int
    ineq_lhs: int
    ineq_rhs: int
    flags: dict[str, bool] = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return all(self.flags.values())

    def initial_basket(self) -> Basket:
        return Basket({(1, r): v for r, v in self.n0.items() if v > 0})


def rr_invert(cv: ChiVector, n0_tail, eta: int = 0) -> InversionLadder:
    """Recover basket data from ``chi, chi_2 .. chi_13`` and the initial-basket tail.

    Non-negativity failures are reported in ``flags`` rather than raised; the
    ``epsilons`` at levels 9, 10 and 12 depend on ``eta``.
    """
    if cv.horizon < 13:
        raise ValueError(f"need chi_2..chi_13, horizon is {cv.horizon}")
    tail = tail_dict(n0_tail)
    env = _env(cv, tail, PackingChoice(eta=eta))
    n0 = {r: INITIAL[(1, r)](env) for r in (2, 3, 4)}
    n0.update(tail)
    eps = {k: f(env) for k, f in EPSILONS.items() if k != "eps"}
    lhs, rhs, rem = INEQ_LHS(env), INEQ_RHS(env), REMAINDER(env)
    flags = {f"n0_1,{r}>=0": v >= 0 for r, v in n0.items()}
    flags.update({f"eps{k}>=0": v >= 0 for k, v in eps.items() if k != 6})
    flags["eps6==0"] = eps[6] == 0
    flags["ineq"] = lhs >= rhs + rem
    return InversionLadder(
        tau=INVARIANTS["tau"](env),
        sigma=INVARIANTS["sigma"](env),
        deltas={n: f(env) for n, f in DELTAS.items()},
        n0=n0,
        sigma5=env["s5"],
        eps=EPSILONS["eps"](env),
        epsilons=eps,
        Rterm=rem,
        ineq_lhs=lhs,
        ineq_rhs=rhs,
        flags=flags,
    )


def upper_forms_apply(cv: ChiVector, n0_tail) -> bool:
    """``chi_2 = 0`` and no initial-basket entry ``(1, r)`` with ``r >= 6``."""
    tail = tail_dict(n0_tail)
    return cv[2] == 0 and all(v == 0 for r, v in tail.items() if r >= 6)


def tail_inequality(cv: ChiVector, n0_tail) -> tuple[int, int, int, bool]:
    """Both sides of the inequality coming from ``eps_10 + eps_12 >= 0``, and the remainder R.

    Returns ``(lhs, rhs, R, holds)`` where ``rhs`` excludes ``R`` and
    ``holds`` means ``lhs >= rhs + R``.
    """
    env = _env(cv, tail_dict(n0_tail))
    lhs, rhs, rem = INEQ_LHS(env), INEQ_RHS(env), REMAINDER(env)
    return lhs, rhs, rem, lhs >= rhs + rem


def _basket_from(level: int, forms: Mapping, env: Mapping, extra: Mapping[int, int] = {}) -> Basket:
    counts = {}
    for entry, f in forms.items():
        v = f(env)
        if v < 0:
            raise NegativeCoefficient(level, entry, v)
        counts[entry] = v
    for r, v in extra.items():
        counts[(1, r)] = counts.get((1, r), 0) + v
    return Basket(counts)


def assemble_ladder(cv: ChiVector, n0_tail, pc: PackingChoice) -> dict[int, Basket]:
    """Canonical-sequence members ``B(5)``, ``B(7)`` and, when the r >= 6 tail
    vanishes and ``chi_2 = 0``, also ``B(8)`` .. ``B(12)``.

    Raises :class:`NegativeCoefficient` at the first infeasible coefficient.
    """
    tail = tail_dict(n0_tail)
    env = _env(cv, tail, pc)
    n0 = {(1, r): INITIAL[(1, r)](env) for r in (2, 3, 4)}
    for entry, v in n0.items():
        if v < 0:
            raise NegativeCoefficient(0, entry, v)
    out = {
        5: _basket_from(5, LEVEL5, env, tail),
        7: _basket_from(7, LEVEL7, env, tail),
    }
    if not upper_forms_apply(cv, tail):
        return out
    for level in (8, 9, 10, 11, 12):
        out[level] = _basket_from(level, UPPER_LEVELS[level], env)
    return out
