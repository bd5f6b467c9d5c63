from fractions import Fraction

import pytest

from basketcalc.wps import WeightedHypersurface, chi_vector, plurigenera, poincare_coeff, wps_volume

X46 = WeightedHypersurface((4, 5, 6, 7, 23), 46)


def test_x46_plurigenera():
    assert plurigenera(X46, 10) == [0, 0, 0, 1, 1, 1, 1, 1, 1, 2]
    assert [poincare_coeff(X46, m) for m in range(1, 11)] == plurigenera(X46, 10)
    assert poincare_coeff(X46, 0) == 1


def test_x46_volume():
    assert X46.amplitude == 1
    assert wps_volume(X46) == Fraction(1, 420)


def test_unit_weights():
    h = WeightedHypersurface((1, 1, 1, 1, 1), 6)
    assert wps_volume(h) == 6
    # sextic in P^4: h0(K) = 5
    assert poincare_coeff(h, 1) == 5


def test_weights_sorted():
    assert WeightedHypersurface((23, 7, 6, 5, 4), 46).weights == (4, 5, 6, 7, 23)


@pytest.mark.parametrize("weights,degree", [
    ((8, 10, 12, 14, 46), 92),
    ((2, 4, 6, 8, 1), 11),
    ((1, 2, 3, 4), 10),
    ((0, 1, 1, 1, 1), 4),
])
def test_rejects_bad_input(weights, degree):
    with pytest.raises(ValueError):
        WeightedHypersurface(weights, degree)


def test_volume_needs_positive_amplitude():
    with pytest.raises(ValueError):
        wps_volume(WeightedHypersurface((1, 1, 1, 1, 1), 4))


def test_chi_vector_starts_at_two():
    cv = chi_vector(X46, 13)
    assert cv.chi == 1 and cv[2] == 0 and cv[4] == 1 and cv[10] == 2
