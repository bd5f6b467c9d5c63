import pytest
from hypothesis import given

from basketcalc.basket import Basket, delta
from basketcalc.canonical import (
    InconsistencyError,
    epsilon,
    initial_basket,
    level_packings,
    sequence,
    step_basket,
    unpack_step,
)

from checks import check_canonical_corpus
from conftest import baskets


@pytest.mark.parametrize("b,want", [
    (Basket.of((2, 5)), Basket.of((1, 2), (1, 3))),
    (Basket.of((3, 7)), Basket.of((1, 2, 2), (1, 3))),
    (Basket.of((1, 4)), Basket.of((1, 4))),
])
def test_initial_basket(b, want):
    assert initial_basket(b) == want


def test_step_basket_examples():
    b = Basket.of((3, 7))
    assert step_basket(b, 5) == Basket.of((1, 2), (2, 5))
    assert step_basket(b, 7) == b
    assert step_basket(b, 0) == initial_basket(b)


def test_epsilon_examples():
    assert epsilon(Basket.of((2, 5)), 5) == 1
    assert epsilon(Basket.of((3, 7)), 7) == 1
    assert all(epsilon(Basket.of((1, 5)), n) == 0 for n in range(5, 12))
    with pytest.raises(ValueError):
        epsilon(Basket.of((1, 5)), 0)


def test_sequence_of_three_sevenths():
    seq = sequence(Basket.of((3, 7)), 8)
    assert seq.at(0) == Basket.of((1, 2, 2), (1, 3))
    assert seq.at(5) == seq.at(6) == Basket.of((1, 2), (2, 5))
    assert seq.at(7) == Basket.of((3, 7))
    assert seq.stabilization_level == 7
    assert seq.epsilons == {5: 1, 6: 0, 7: 1, 8: 0}


def test_sequence_constant():
    seq = sequence(Basket.of((1, 2)), 6)
    assert seq.stabilization_level == 0
    assert all(b == Basket.of((1, 2)) for _, b, _ in seq.steps)


def test_level_packings_of_d10_at_11():
    b = Basket.of((1, 2, 5), (3, 7), (2, 5, 3), (1, 3, 3), (3, 11))
    assert level_packings(b, 11) == [((2, 7), (1, 4))]


@given(baskets())
def test_sequence_properties(b):
    top = max(b.rmax, 5)
    for i in range(0, top + 1):
        for j in range(i, top + 1):
            assert step_basket(step_basket(b, j), i) == step_basket(b, i)
    for n in range(5, top + 1):
        assert unpack_step(step_basket(b, n), n) == step_basket(b, n - 1)
        assert delta(step_basket(b, n), n) == delta(b, n)


def test_random_corpus():
    ok, detail = check_canonical_corpus(size=100)
    assert ok, detail
