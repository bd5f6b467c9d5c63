from fractions import Fraction as F

import pytest

from basketcalc.farey import MEMBER, FareyLevel, farey_level, neighbors, new_fractions, verify_unimodular

from checks import check_farey


def test_level_five():
    assert list(farey_level(5, 7).fractions) == [F(1, 2), F(2, 5), F(1, 3), F(1, 4), F(1, 5), F(1, 6), F(1, 7), F(1, 8)]


@pytest.mark.parametrize("n,added", [(7, {F(2, 7), F(3, 7)}), (9, {F(4, 9), F(2, 9)}), (6, set())])
def test_new_fractions(n, added):
    assert {w for w, _, _ in new_fractions(n)} == added
    assert set(farey_level(n, n).fractions) - set(farey_level(n - 1, n).fractions) == added


def test_low_levels_coincide():
    base = farey_level(0, 12).fractions
    assert all(farey_level(n, 12).fractions == base for n in range(1, 5))


def test_neighbors():
    s5 = farey_level(5, 7)
    assert neighbors(s5, F(3, 7)) == (F(2, 5), F(1, 2))
    assert neighbors(s5, F(2, 5)) is MEMBER
    assert neighbors(farey_level(6, 7), F(2, 7)) == (F(1, 4), F(1, 3))
    with pytest.raises(ValueError):
        neighbors(s5, F(1, 20))


def test_unimodular():
    assert verify_unimodular(farey_level(5, 10))
    assert verify_unimodular(farey_level(30, 100))
    broken = FareyLevel(0, 4, (F(1, 2), F(1, 4)))
    assert not verify_unimodular(broken)


def test_bad_arguments():
    with pytest.raises(ValueError):
        farey_level(-1, 5)
    with pytest.raises(ValueError):
        farey_level(3, 1)


def test_all_levels_unimodular_and_mediant():
    ok, detail = check_farey()
    assert ok, detail
