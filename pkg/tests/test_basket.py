from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from basketcalc.basket import (
    Basket,
    BasketError,
    basket_from_json,
    basket_to_json,
    canonicalize,
    delta,
    delta_pair,
    is_prime_packing,
    pack,
    packing_defect,
    prime_packing_candidates,
    rr_correction,
    union,
)

from conftest import baskets, canonical_pairs

D10_BASKET = Basket.of((1, 2, 5), (3, 7), (2, 5, 3), (1, 3, 3), (3, 11))


def test_canonicalize_reduces_and_merges():
    assert canonicalize([(2, 4, 1)]) == Basket({(1, 2): 2})
    assert canonicalize([(1, 2, 1), (1, 2, 2)]) == Basket({(1, 2): 3})


@pytest.mark.parametrize("raw", [[(3, 5, 1)], [(2, 2, 1)], [(0, 3, 1)], [(1, 3, 0)]])
def test_canonicalize_rejects(raw):
    with pytest.raises(BasketError):
        canonicalize(raw)


def test_entry_order_is_slope_descending():
    b = Basket.of((1, 5), (3, 7), (1, 2), (2, 7))
    assert [p.key for p in b] == [(1, 2), (3, 7), (2, 7), (1, 5)]
    assert str(D10_BASKET) == "{5x(1,2), (3,7), 3x(2,5), 3x(1,3), (3,11)}"


def test_union():
    half = Basket.of((1, 2))
    assert union(half, half) == Basket({(1, 2): 2})
    assert union(half, Basket.of((2, 5))) == Basket.of((1, 2), (2, 5))
    assert union(Basket(), D10_BASKET) == D10_BASKET


@pytest.mark.parametrize("pair,n,want", [((1, 2), 2, 0), ((1, 2), 3, 1), ((2, 5), 5, 5), ((1, 3), 4, 1)])
def test_delta_pair_values(pair, n, want):
    assert delta_pair(*pair, n) == want


def test_delta_of_baskets():
    assert delta(Basket.of((1, 2, 2), (1, 3)), 5) == 10
    assert delta(Basket(), 7) == 0
    assert delta(D10_BASKET, 2) == 0


def test_sigma_values():
    assert D10_BASKET.sigma == 20
    assert D10_BASKET.sigma_prime == Fraction(6163, 770)
    assert Basket().sigma == 0 and Basket().sigma_prime == 0
    before = Basket.of((1, 2), (1, 3))
    after = pack(before, (1, 2), (1, 3))
    assert after == Basket.of((2, 5))
    assert before.sigma_prime - after.sigma_prime == Fraction(1, 30)


def test_rr_correction_values():
    assert rr_correction(Basket.of((1, 2)), 2) == Fraction(1, 4)
    assert rr_correction(Basket.of((2, 5)), 3) == 1
    assert rr_correction(Basket(), 9) == 0


def test_pack_examples():
    assert pack(Basket.of((2, 5), (1, 3)), (2, 5), (1, 3)) == Basket.of((3, 8))
    twice = Basket({(1, 2): 2})
    assert pack(twice, (1, 2), (1, 2)) == twice
    with pytest.raises(BasketError):
        pack(Basket.of((1, 2)), (1, 2), (1, 2))
    with pytest.raises(BasketError):
        pack(Basket.of((1, 2)), (1, 2), (1, 3))


def test_prime_packing_checks():
    assert is_prime_packing((1, 3), (1, 4)) == (True, 7)
    assert is_prime_packing((1, 2), (3, 7)) == (True, 9)
    assert is_prime_packing((1, 2), (1, 4))[0] is False
    b = Basket.of((1, 2), (1, 3))
    assert prime_packing_candidates(b, 5) == [((1, 2), (1, 3))]
    assert prime_packing_candidates(b, 6) == []
    assert all(prime_packing_candidates(D10_BASKET, n) == [] for n in range(13, 30))


def test_json_round_trip():
    data = basket_to_json(D10_BASKET)
    assert basket_from_json(data) == D10_BASKET
    assert basket_from_json('{"pairs": [[2, 4, 1], [1, 2]]}') == Basket({(1, 2): 3})
    for bad in ('{"pairs": [[1, "2", 1]]}', '{"pairs": 3}', '[]', '{"pairs": [[1, 2, 3, 4]]}'):
        with pytest.raises(BasketError):
            basket_from_json(bad)


@given(baskets())
def test_delta_non_negative(b):
    assert delta(b, 2) == 0
    assert all(delta(b, n) >= 0 for n in range(2, 25))


@given(baskets(), st.data())
def test_packing_monotone_and_defect(b, data):
    keys = [p.key for p in b]
    e1 = data.draw(st.sampled_from(keys))
    e2 = data.draw(st.sampled_from(keys))
    if e1 == e2 and b.mult(*e1) < 2:
        return
    after = pack(b, e1, e2)
    assert after.sigma == b.sigma
    assert b.sigma_prime - after.sigma_prime == packing_defect(e1, e2)
    assert all(delta(b, n) >= delta(after, n) for n in range(2, 25))


def test_corollary_generalized_pairs():
    for b, r in canonical_pairs(15):
        for m in (2, 3):
            single = Basket({(b, r): m})
            merged = pack(Basket({(b, r): 2 * m}), (b, r), (b, r), m)
            assert merged == Basket({(b, r): 2 * m})
            assert canonicalize([(m * b, m * r, 1)]) == single


def test_correction_delta_link():
    for b, r in canonical_pairs(20):
        for j in range(2, 25):
            bar = (j * b) % r
            lhs = Fraction(bar * (r - bar) - j * b * (r - j * b), 2 * r)
            assert lhs == delta_pair(b, r, j)
