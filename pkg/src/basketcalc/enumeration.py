"""Exhaustive search over formal baskets with small plurigenera.

The search runs in three stages.

1. Plurigenus vectors.  Loop over ``chi`` and ``P_2 .. P_12`` (each capped),
   with optional pins, and drop vectors failing the geometric filters or the
   slack of the inequality coming from ``eps_10 + eps_12 >= 0``.
2. Canonical ladder.  For each admissible tail of ``(1, r)`` entries
   (``r >= 5``), build the initial basket and walk levels 5..12.  At every
   level the number of new prime packings is forced by the delta of that
   level; only *which* Farey mediants receive them is a choice.  Level 12 is
   unconstrained and fixes ``P_13``.
3. Descent.  Every resulting ``B(12)`` with positive volume is expanded by
   prime packings of strictly increasing level above 12, pruning branches once
   the volume is no longer positive (it only drops under packing).

All arithmetic is exact, and the output order is fixed by canonical keys, so
the number of worker processes never changes the result.
"""

from __future__ import annotations

import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from fractions import Fraction
from math import gcd
from typing import Iterator, Mapping, Sequence

from .basket import Basket, delta, packing_defect, pack, prime_packing_candidates
from .canonical import InconsistencyError, step_basket
from .farey import new_fractions
from .formal import (
    ChiVector,
    FormalBasket,
    NegativeCoefficient,
    PackingChoice,
    assemble_ladder,
    upper_forms_apply,
    chi_seq,
    k3,
    rr_invert,
)

__all__ = [
    "Constraints",
    "DescendantNode",
    "DescendantSummary",
    "CandidateRecord",
    "SearchReport",
    "CounterexampleFound",
    "minimal_d",
    "gcd_filter",
    "monotonicity_filter",
    "enumerate_candidates",
    "descend",
    "verify_p12",
    "verify_p24",
    "recover_formal_baskets",
    "search",
]

WORKERS_ENV = "BASKETCALC_WORKERS"
LADDER_TOP = 12
REPORT_HORIZON = 24


# ---------------------------------------------------------------------------
# constraints and filters


@dataclass(frozen=True)
class Constraints:
    chi_min: int = 2
    chi_max: int = 8
    pm_cap: int = 1
    require_p2_zero: bool = True
    apply_gcd_lemma: bool = True
    sigma_cap: int = 85
    n0_zero_from: int = 9
    apply_monotonicity: bool = True
    enforce_eps6: bool = True
    fixed: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.chi_min < 2:
            raise ValueError("chi_min must be at least 2")
        if self.pm_cap < 0 or self.sigma_cap < 0:
            raise ValueError("caps must be non-negative")
        if self.n0_zero_from < 5:
            raise ValueError("n0_zero_from must be at least 5")
        pins = tuple(sorted((int(m), int(v)) for m, v in dict(self.fixed).items()))
        for m, v in pins:
            if not 2 <= m <= LADDER_TOP + 1 or v < 0:
                raise ValueError(f"bad pin P_{m} = {v}")
        object.__setattr__(self, "fixed", pins)

    @property
    def chi_hi(self) -> int:
        # eps_10 + eps_12 >= 0 bounds chi by 8 * pm_cap once every P_m <= pm_cap
        return min(self.chi_max, 8 * max(self.pm_cap, 1))

    def to_dict(self) -> dict:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        out["fixed"] = {str(m): v for m, v in self.fixed}
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> "Constraints":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown constraint keys: {sorted(unknown)}")
        kw = dict(data)
        if "fixed" in kw:
            kw["fixed"] = tuple((int(m), int(v)) for m, v in dict(kw["fixed"]).items())
        return cls(**kw)


def minimal_d(cv: ChiVector) -> int | None:
    for m in range(2, cv.horizon + 1):
        if cv[m] > 0:
            return m
    return None


def _pget(cv: ChiVector, m: int, p1: int | None):
    return p1 if m == 1 else cv[m]


def gcd_filter(cv: ChiVector, p1: int | None = None) -> bool:
    """``P_m = P_n = P_lcm = 1`` forces ``P_gcd = 1``; checked up to the horizon.

    ``P_1`` is unknown unless given, and triples with ``gcd = 1`` are then skipped.
    """
    h = cv.horizon
    for m in range(2, h + 1):
        if cv[m] != 1:
            continue
        for n in range(m + 1, h + 1):
            if cv[n] != 1:
                continue
            g = gcd(m, n)
            lcm = m * n // g
            if lcm > h or cv[lcm] != 1:
                continue
            if g == 1 and p1 is None:
                continue
            if _pget(cv, g, p1) != 1:
                return False
    return True


def monotonicity_filter(cv: ChiVector, p1: int | None = None) -> bool:
    """``P_a > 0`` implies ``P_(a+b) >= P_b`` (multiply by a fixed section)."""
    h = cv.horizon
    lo = 1 if p1 is not None else 2
    for a in range(lo, h):
        if _pget(cv, a, p1) <= 0:
            continue
        for b in range(2, h - a + 1):
            if cv[a + b] < cv[b]:
                return False
    return True


def _geometric_ok(cv: ChiVector, c: Constraints, p1: int | None) -> bool:
    if any(cv[m] < 0 for m in range(2, cv.horizon + 1)):
        return False
    if c.apply_gcd_lemma and not gcd_filter(cv, p1):
        return False
    if c.apply_monotonicity and not monotonicity_filter(cv, p1):
        return False
    return True


# ---------------------------------------------------------------------------
# descent below B(12)


@dataclass(frozen=True)
class DescendantNode:
    basket: Basket
    level: int  # level of the last prime packing (12 for the root)
    k3: Fraction
    p10: int
    p24: int
    pruned: bool
    minimal_positive: bool
    geometric: bool = True  # passes the plurigenus filters up to P_24

    def to_json(self) -> dict:
        return {
            "basket": self.basket.as_triples(),
            "level": self.level,
            "k3": _q(self.k3),
            "p10": self.p10,
            "p24": self.p24,
            "pruned": self.pruned,
            "minimal_positive": self.minimal_positive,
            "geometric": self.geometric,
        }


@dataclass(frozen=True)
class DescendantSummary:
    count: int  # proper descendants with K^3 > 0
    min_p10: int
    min_p24: int
    min_k3: Fraction
    minimal_positive: tuple[Basket, ...]
    nodes: tuple[DescendantNode, ...]  # root first, then pruned and surviving nodes
    max_depth: int

    def to_json(self) -> dict:
        return {
            "count": self.count,
            "min_p10": self.min_p10,
            "min_p24": self.min_p24,
            "min_k3": _q(self.min_k3),
            "minimal_positive": [b.as_triples() for b in self.minimal_positive],
            "max_depth": self.max_depth,
            "nodes": [n.to_json() for n in self.nodes],
        }


def _min_defect(basket: Basket) -> Fraction | None:
    keys = [p.key for p in basket]
    best = None
    for i, e1 in enumerate(keys):
        for e2 in keys[i + 1:]:
            dfc = packing_defect(e1, e2)
            if best is None or dfc < best:
                best = dfc
    return best


def _is_minimal_positive(basket: Basket, vol: Fraction) -> bool:
    if vol <= 0:
        return False
    md = _min_defect(basket)
    return md is None or vol <= md


def _count_vectors(caps: Sequence[int], parents: Sequence[Sequence[int]], avail: Sequence[int],
                   total: int | None) -> Iterator[tuple[int, ...]]:
    """Vectors ``x`` with ``x_i <= caps_i``, shared parent budgets, and optional fixed sum."""
    k = len(caps)
    left = list(avail)
    x = [0] * k

    def rec(i: int, remaining: int | None):
        if i == k:
            if remaining in (None, 0):
                yield tuple(x)
            return
        hi = min([caps[i]] + [left[p] for p in parents[i]])
        if remaining is not None:
            hi = min(hi, remaining)
        for v in range(hi + 1):
            x[i] = v
            for p in parents[i]:
                left[p] -= v
            yield from rec(i + 1, None if remaining is None else remaining - v)
            for p in parents[i]:
                left[p] += v
        x[i] = 0

    yield from rec(0, total)


def _packing_options(basket: Basket, pairs, total: int | None):
    """Multisets of the given packings that the basket can afford."""
    idx: dict[tuple[int, int], int] = {}
    for e1, e2 in pairs:
        for e in (e1, e2):
            idx.setdefault(e, len(idx))
    avail = [0] * len(idx)
    for e, i in idx.items():
        avail[i] = basket.mult(*e)
    parents = [(idx[e1], idx[e2]) for e1, e2 in pairs]
    caps = [min(avail[a], avail[b]) for a, b in parents]
    yield from _count_vectors(caps, parents, avail, total)


def _apply(basket: Basket, pairs, x) -> Basket:
    for (e1, e2), v in zip(pairs, x):
        if v:
            basket = pack(basket, e1, e2, v)
    return basket


def _node(basket: Basket, level: int, chi: int, chi2: int, c: Constraints | None) -> DescendantNode:
    fb = FormalBasket(basket, chi, chi2)
    vol = k3(fb)
    cv = chi_seq(fb, REPORT_HORIZON)
    geo = True if c is None else _geometric_ok(cv, c, 0 if c.require_p2_zero else None)
    return DescendantNode(
        basket=basket,
        level=level,
        k3=vol,
        p10=cv[10],
        p24=cv[24],
        pruned=vol <= 0,
        minimal_positive=_is_minimal_positive(basket, vol),
        geometric=geo,
    )


def descend(b: Basket, chi: int, chi2: int = 0, start_level: int = LADDER_TOP,
            constraints: Constraints | None = None) -> DescendantSummary:
    """All descendants of ``b`` by prime packings of strictly increasing level above ``start_level``.

    Nodes with ``K^3 <= 0`` are recorded as pruned and not expanded.
    """
    root = _node(b, start_level, chi, chi2, constraints)
    if root.k3 <= 0:
        raise ValueError(f"descend needs K^3 > 0, got {root.k3} for {b}")
    out = [root]
    size0 = b.size
    max_depth = 0

    def rec(basket: Basket, last: int, depth: int):
        nonlocal max_depth
        rs = sorted((p.r for p in basket), reverse=True)
        top = rs[0] + rs[1] if len(rs) > 1 else 0
        for n in range(last + 1, top + 1):
            pairs = prime_packing_candidates(basket, n)
            if not pairs:
                continue
            for x in _packing_options(basket, pairs, None):
                steps = sum(x)
                if steps == 0:
                    continue
                child = _apply(basket, pairs, x)
                if child.size != basket.size - steps:
                    raise InconsistencyError("prime packing did not drop the size by one")
                node = _node(child, n, chi, chi2, constraints)
                out.append(node)
                d = size0 - child.size
                max_depth = max(max_depth, d)
                if d > size0 - 1:
                    raise InconsistencyError("descent deeper than the entry count allows")
                if not node.pruned:
                    rec(child, n, depth + 1)

    rec(b, start_level, 0)
    alive = [nd for nd in out if not nd.pruned]
    return DescendantSummary(
        count=len(alive) - 1,
        min_p10=min(nd.p10 for nd in alive),
        min_p24=min(nd.p24 for nd in alive),
        min_k3=min(nd.k3 for nd in alive),
        minimal_positive=tuple(nd.basket for nd in alive if nd.minimal_positive),
        nodes=tuple([out[0]] + sorted(out[1:], key=lambda nd: (nd.level, _bkey(nd.basket)))),
        max_depth=max_depth,
    )


def _bkey(b: Basket):
    return tuple((p.r, p.b, p.mult) for p in b)


# ---------------------------------------------------------------------------
# the ladder up to level 12


@dataclass(frozen=True)
class CandidateRecord:
    cv: ChiVector  # chi, P_2 .. P_13
    n0_tail: tuple[tuple[int, int], ...]  # (r, n0_1,r) for r >= 5, non-zero only
    pc: PackingChoice
    b12: Basket
    k3_b12: Fraction
    descendants: DescendantSummary

    @property
    def d(self) -> int | None:
        return minimal_d(self.cv)

    @property
    def minimal_positive(self) -> tuple[Basket, ...]:
        return self.descendants.minimal_positive

    @property
    def sort_key(self):
        return (self.cv.chi, self.cv.values, self.n0_tail, _bkey(self.b12))

    def to_json(self) -> dict:
        return {
            "chi": self.cv.chi,
            "P": {str(m): self.cv[m] for m in range(2, self.cv.horizon + 1)},
            "d": self.d,
            "n0_tail": {str(r): v for r, v in self.n0_tail},
            "packing_choice": {
                "eta": self.pc.eta, "zeta": self.pc.zeta,
                "alpha": self.pc.alpha, "beta": self.pc.beta,
            },
            "b12": self.b12.as_triples(),
            "k3_b12": _q(self.k3_b12),
            "descendants": self.descendants.to_json(),
        }


def _q(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _delta_target(chi: int, P: Mapping[int, int], n: int) -> int:
    chi2, chi3 = P[2], P[3]
    sigma = 10 * chi + 5 * chi2 - chi3
    tau = sigma - 6 * chi - 2 * chi2
    twice = 2 * (P[n + 1] - P[n]) + n * n * tau - n * sigma + 4 * chi
    if twice % 2:
        raise InconsistencyError(f"half-integral delta target at level {n}")
    return twice // 2


def _initial(chi: int, P: Mapping[int, int], tail: Mapping[int, int]) -> Basket | None:
    sigma = 10 * chi + 5 * P[2] - P[3]
    d3 = _delta_target(chi, P, 3)
    d4 = _delta_target(chi, P, 4)
    n2 = d3
    n3 = d4 - 2 * d3
    n4 = sigma - n2 - n3 - sum(tail.values())
    if min(n2, n3, n4) < 0:
        return None
    counts = {(1, 2): n2, (1, 3): n3, (1, 4): n4}
    counts.update({(1, r): v for r, v in tail.items()})
    b0 = Basket(counts)
    if (delta(b0, 3), delta(b0, 4), b0.sigma) != (d3, d4, sigma):
        raise InconsistencyError(f"initial basket {b0} misses its own deltas")
    return b0


@dataclass
class _Stats:
    vectors: int = 0
    vectors_filtered: int = 0
    vectors_slack: int = 0
    tails: int = 0
    initial_infeasible: int = 0
    eps_negative: int = 0
    eps6_nonzero: int = 0
    p13_negative: int = 0
    final_filtered: int = 0
    k3_nonpositive: int = 0
    candidates: int = 0
    descendants: int = 0
    pruned_descendants: int = 0

    def merge(self, other: "_Stats") -> None:
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))


def _ladder(chi: int, P: dict[int, int], b0: Basket, c: Constraints | None, st: _Stats):
    """Walk levels 5..12 from ``b0``; yield ``(b12, P_13, levels)``."""

    def rec(basket: Basket, n: int, levels: dict[int, Basket]):
        if n == LADDER_TOP:
            news = [t for t in new_fractions(n)]
            pairs = [((hi.numerator, hi.denominator), (lo.numerator, lo.denominator))
                     for _, lo, hi in news]
            for x in _packing_options(basket, pairs, None):
                b12 = _apply(basket, pairs, x)
                # delta_12 of B(12) fixes chi_13
                p13 = delta(b12, n) - _delta_target(chi, {**P, n + 1: 0}, n)
                if p13 < 0:
                    st.p13_negative += 1
                    continue
                yield b12, p13, {**levels, n: b12}
            return
        eps = delta(basket, n) - _delta_target(chi, P, n)
        if eps < 0:
            st.eps_negative += 1
            return
        news = new_fractions(n)
        if not news:
            if eps != 0 and (c is None or c.enforce_eps6):
                st.eps6_nonzero += 1
                return
            yield from rec(basket, n + 1, {**levels, n: basket})
            return
        pairs = [((hi.numerator, hi.denominator), (lo.numerator, lo.denominator))
                 for _, lo, hi in news]
        for x in _packing_options(basket, pairs, eps):
            nxt = _apply(basket, pairs, x)
            if delta(nxt, n) != delta(basket, n) - eps:
                raise InconsistencyError(f"level-{n} packings did not drop delta by one each")
            yield from rec(nxt, n + 1, {**levels, n: nxt})

    yield from rec(b0, 5, {0: b0})


def _packing_choice(levels: Mapping[int, Basket]) -> PackingChoice:
    return PackingChoice(
        eta=levels[7].mult(2, 7),
        zeta=levels[9].mult(4, 9),
        alpha=levels[11].mult(5, 11),
        beta=levels[11].mult(4, 11),
    )


def _cross_check(cv: ChiVector, tail: dict[int, int], b12: Basket, levels, c: Constraints | None):
    fb = FormalBasket(b12, cv.chi, cv[2])
    fwd = chi_seq(fb, cv.horizon)
    if fwd.values != cv.values:
        raise InconsistencyError(f"{b12} does not reproduce its plurigenus vector")
    for n, b in levels.items():
        if step_basket(b12, n) != b:
            raise InconsistencyError(f"level {n} of {b12} disagrees with its canonical sequence")
    pc = _packing_choice(levels)
    if c is not None and not c.enforce_eps6:
        return pc
    lad = rr_invert(cv, tail, eta=pc.eta)
    if lad.initial_basket() != levels[0]:
        raise InconsistencyError("closed-form initial basket disagrees with the ladder")
    if upper_forms_apply(cv, tail):
        try:
            closed = assemble_ladder(cv, tail, pc)
        except NegativeCoefficient as exc:
            raise InconsistencyError(f"closed-form ladder rejects a generic solution: {exc}")
        for n, b in closed.items():
            if b != levels[n]:
                raise InconsistencyError(f"closed-form B({n}) = {b} but generic gives {levels[n]}")
    return pc


def _tails(rs: Sequence[int], budget: int) -> Iterator[dict[int, int]]:
    """Tails ``{r: n}`` whose remainder cost stays within ``budget``."""
    costs = {5: 2, 6: 5, 7: 6, 8: 8, 9: 10, 10: 12, 11: 13}

    def rec(i: int, left: int, acc: dict[int, int]):
        if i == len(rs):
            yield dict(acc)
            return
        r = rs[i]
        cost = costs.get(r, 14)
        for v in range(left // cost + 1):
            if v:
                acc[r] = v
            yield from rec(i + 1, left - v * cost, acc)
        acc.pop(r, None)

    yield from rec(0, budget, {})


def _p_vectors(chi: int, c: Constraints) -> Iterator[dict[int, int]]:
    pins = dict(c.fixed)
    ranges = []
    for m in range(2, LADDER_TOP + 1):
        if m in pins:
            ranges.append((pins[m],))
        elif m == 2 and c.require_p2_zero:
            ranges.append((0,))
        else:
            ranges.append(tuple(range(c.pm_cap + 1)))

    def rec(i: int, acc: list[int]):
        if i == len(ranges):
            yield {m: v for m, v in zip(range(2, LADDER_TOP + 1), acc)}
            return
        for v in ranges[i]:
            acc.append(v)
            yield from rec(i + 1, acc)
            acc.pop()

    yield from rec(0, [])


def _search_chi(args) -> tuple[list[CandidateRecord], list[dict], _Stats]:
    c, chi = args
    st = _Stats()
    records: list[CandidateRecord] = []
    dead: list[dict] = []
    p1 = 0 if c.require_p2_zero else None
    pins = dict(c.fixed)
    for P in _p_vectors(chi, c):
        st.vectors += 1
        partial = ChiVector(chi, tuple(P[m] for m in range(2, LADDER_TOP + 1)))
        if not _geometric_ok(partial, c, p1):
            st.vectors_filtered += 1
            continue
        sigma = 10 * chi + 5 * P[2] - P[3]
        if sigma > c.sigma_cap:
            st.vectors_filtered += 1
            continue
        slack = (2 * P[5] + 3 * P[6] + P[8] + P[10] + P[12]
                 - (chi + 10 * P[2] + 4 * P[3] + P[7] + P[11]))
        if slack < 0:
            st.vectors_slack += 1
            continue
        for tail in _tails(list(range(5, c.n0_zero_from)), slack):
            st.tails += 1
            b0 = _initial(chi, P, tail)
            if b0 is None:
                st.initial_infeasible += 1
                continue
            for b12, p13, levels in _ladder(chi, P, b0, c, st):
                if 13 in pins and pins[13] != p13:
                    continue
                cv = ChiVector(chi, partial.values + (p13,))
                if not _geometric_ok(cv, c, p1):
                    st.final_filtered += 1
                    continue
                vol = k3(FormalBasket(b12, chi, P[2]))
                if vol <= 0:
                    st.k3_nonpositive += 1
                    dead.append({"chi": chi, "b12": b12.as_triples(), "k3": _q(vol)})
                    continue
                if c.enforce_eps6:
                    pc = _cross_check(cv, tail, b12, levels, c)
                else:
                    pc = _packing_choice(levels)
                desc = descend(b12, chi, P[2], constraints=c)
                st.candidates += 1
                st.descendants += desc.count
                st.pruned_descendants += sum(1 for nd in desc.nodes if nd.pruned)
                records.append(CandidateRecord(
                    cv=cv,
                    n0_tail=tuple(sorted(tail.items())),
                    pc=pc,
                    b12=b12,
                    k3_b12=vol,
                    descendants=desc,
                ))
    return records, dead, st


def _workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run(c: Constraints, workers: int | None = None):
    chis = list(range(c.chi_min, c.chi_hi + 1))
    workers = _workers() if workers is None else max(1, workers)
    jobs = [(c, chi) for chi in chis]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            parts = list(pool.map(_search_chi, jobs))
    else:
        parts = [_search_chi(j) for j in jobs]
    records, dead, st = [], [], _Stats()
    for recs, d, s in parts:
        records.extend(recs)
        dead.extend(d)
        st.merge(s)
    seen = {}
    for r in records:
        key = (r.b12, r.cv.chi)
        if key in seen and c.enforce_eps6:
            raise InconsistencyError(f"duplicate candidate {r.b12} at chi = {r.cv.chi}")
        seen[key] = r
    records.sort(key=lambda r: r.sort_key)
    dead.sort(key=lambda d: (d["chi"], d["b12"]))
    return records, dead, st


def enumerate_candidates(c: Constraints, workers: int | None = None) -> list[CandidateRecord]:
    return _run(c, workers)[0]


# ---------------------------------------------------------------------------
# verification drivers


@dataclass
class SearchReport:
    kind: str
    constraints: Constraints
    candidates: list[CandidateRecord]
    violations: list[dict]
    stats: dict
    fixtures: list[dict] = field(default_factory=list)
    nonpositive_b12: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def ordering_key(self) -> str:
        return "chi, P_2..P_13, n0 tail, B(12) entries by (r, b)"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "passed": self.passed,
            "constraints": self.constraints.to_dict(),
            "candidate_count": len(self.candidates),
            "candidates": [r.to_json() for r in self.candidates],
            "violations": self.violations,
            "stats": self.stats,
            "fixtures": self.fixtures,
            "nonpositive_b12": self.nonpositive_b12,
            "ordering_key": self.ordering_key,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)


class CounterexampleFound(RuntimeError):
    def __init__(self, report: SearchReport):
        v = report.violations[0]
        super().__init__(f"{report.kind}: {len(report.violations)} violation(s), first {v}")
        self.report = report
        self.record = v


def search(c: Constraints, kind: str = "enumerate", workers: int | None = None) -> SearchReport:
    t0 = time.perf_counter()
    records, dead, st = _run(c, workers)
    print(f"[{kind}] {len(records)} candidates in {time.perf_counter() - t0:.2f}s",
          file=sys.stderr)
    stats = {f.name: getattr(st, f.name) for f in fields(st)}
    return SearchReport(kind, c, records, [], stats, nonpositive_b12=dead)


def verify_p12(c: Constraints | None = None, raise_on_violation: bool = True,
               workers: int | None = None) -> SearchReport:
    c = c or Constraints()
    rep = search(c, "p12", workers)
    for r in rep.candidates:
        if r.cv[12] == 0:
            rep.violations.append({"chi": r.cv.chi, "b12": r.b12.as_triples(), "P12": 0,
                                   "k3_b12": _q(r.k3_b12)})
    if rep.violations and raise_on_violation:
        raise CounterexampleFound(rep)
    return rep


def verify_p24(c: Constraints | None = None, raise_on_violation: bool = True,
               workers: int | None = None, fixtures=None) -> SearchReport:
    """Look for a positive-volume descendant with ``P_10 <= 1`` and ``P_24 <= 1``.

    Descendants failing the plurigenus filters through ``P_24`` cannot come
    from a 3-fold and are not counted.  ``fixtures`` (objects with ``name``,
    ``chi``, ``basket`` and ``p24``) are looked up in the trace, which holds
    every level-12 basket reached and every descendant node, pruned or not.
    """
    c = c or Constraints()
    rep = search(c, "p24", workers)
    seen: set[tuple[int, Basket]] = set()
    for r in rep.candidates:
        for nd in r.descendants.nodes:
            seen.add((r.cv.chi, nd.basket))
            if not nd.pruned and nd.geometric and nd.p10 <= 1 and nd.p24 <= 1:
                rep.violations.append({
                    "chi": r.cv.chi, "b12": r.b12.as_triples(),
                    "basket": nd.basket.as_triples(), "P10": nd.p10, "P24": nd.p24,
                    "k3": _q(nd.k3),
                })
    for d in rep.nonpositive_b12:
        seen.add((d["chi"], Basket({(b, r): m for b, r, m in d["b12"]})))
    for fx in fixtures or ():
        found = (fx.chi, fx.basket) in seen
        p24 = chi_seq(FormalBasket(fx.basket, fx.chi, 0), REPORT_HORIZON)[24]
        rep.fixtures.append({
            "name": fx.name,
            "chi": fx.chi,
            "basket": fx.basket.as_triples(),
            "found": found,
            "p24": p24,
            "expected_p24": fx.p24,
            "match": found and (fx.p24 is None or p24 == fx.p24),
        })
    if rep.violations and raise_on_violation:
        raise CounterexampleFound(rep)
    return rep


# ---------------------------------------------------------------------------
# recovery from a known plurigenus vector


def recover_formal_baskets(cv: ChiVector, max_tail_r: int = 30) -> list[FormalBasket]:
    """Formal baskets with ``chi_2 = 0`` whose plurigenera match ``cv`` through its horizon.

    Runs the same ladder with every ``P_m`` pinned (no range restriction on
    ``chi``, no geometric filters) and then descends; ``cv`` must reach ``chi_13``.
    """
    if cv.horizon < LADDER_TOP + 1:
        raise ValueError("need the vector through chi_13")
    if cv[2] != 0:
        raise ValueError("recovery assumes chi_2 = 0")
    chi = cv.chi
    P = {m: cv[m] for m in range(2, LADDER_TOP + 1)}
    slack = (2 * P[5] + 3 * P[6] + P[8] + P[10] + P[12]
             - (chi + 10 * P[2] + 4 * P[3] + P[7] + P[11] + cv[13]))
    found: dict[Basket, FormalBasket] = {}
    st = _Stats()
    for tail in _tails(list(range(5, max_tail_r + 1)), max(slack, -1)):
        b0 = _initial(chi, P, tail)
        if b0 is None:
            continue
        for b12, p13, _ in _ladder(chi, P, b0, None, st):
            if p13 != cv[13]:
                continue
            fb = FormalBasket(b12, chi, 0)
            if k3(fb) <= 0:
                continue
            for nd in descend(b12, chi, 0).nodes:
                if nd.pruned:
                    continue
                f = FormalBasket(nd.basket, chi, 0)
                if chi_seq(f, cv.horizon).values == cv.values:
                    found[nd.basket] = f
    return [found[b] for b in sorted(found, key=_bkey)]
