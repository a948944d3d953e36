from fractions import Fraction

import pytest

from quasispec.poly import Poly, X, magnitude


def test_trailing_zeros_trimmed_and_degree():
    p = Poly([1, 2, 0, 0])
    assert p.coeffs == (1, 2)
    assert p.degree == 1
    assert Poly([0]).is_zero()


def test_arithmetic_matches_hand_expansion():
    p = (X - 3) * (X - 1) - 1
    assert p == Poly([2, -4, 1])
    assert p(0) == 2
    assert (p - p).is_zero()
    assert -p == Poly([-2, 4, -1])
    assert 1 - X == Poly([1, -1])


def test_call_with_poly_composes():
    p = X * X + 1
    q = p(X + 1)
    assert q == Poly([2, 2, 1])


def test_exactness_and_float_conversion():
    p = Poly([Fraction(1, 3), 1])
    assert p.is_exact()
    pf = p.to_float()
    assert not pf.is_exact()
    assert pf.coeffs[0] == pytest.approx(1 / 3)


def test_scalar_division_and_from_roots():
    p = Poly.from_roots([1, 2])
    assert p == Poly([2, -3, 1])
    assert (p / 2).coeffs == (1, Fraction(-3, 2), Fraction(1, 2))


def test_magnitude_of_poly_and_scalar():
    assert magnitude(-3.5) == 3.5
    assert magnitude(Poly([1, -4])) == 4
