from fractions import Fraction

import pytest

from src.surface.affine import AffineMap


def test_fixing_map_sends_source_to_target():
    g = AffineMap.fixing(-1j, 0j, 2 + 1j)

    assert g(-1j) == pytest.approx(-1j)
    assert g(0j) == pytest.approx(2 + 1j)


def test_compose_and_inverse_cancel():
    f = AffineMap(1 + 1j, 2)
    g = f.compose(f.inverse())

    assert g(3 - 2j) == pytest.approx(3 - 2j)


def test_zero_ratio_rejected():
    with pytest.raises(ValueError):
        AffineMap(0, 1)


def test_apply_xy_stays_exact():
    # ratio 1 + i, offset i: (x, y) -> (x - y, x + y + 1)
    f = AffineMap(1 + 1j, 1j)
    x, y = f.apply_xy(Fraction(1, 3), Fraction(1, 5))

    assert (x, y) == (Fraction(2, 15), Fraction(23, 15))
    assert f.apply_vector_xy(Fraction(1), Fraction(0)) == (1, 1)


def test_modulus():
    assert AffineMap(3 + 4j, 0).modulus == pytest.approx(5.0)
