import math
from fractions import Fraction

import pytest
import sympy as sp

from quasispec.errors import InvalidAlpha
from quasispec.laguerre import (gen_binomial, geronimus_laguerre, geronimus_laguerre_closed_forms,
                                laguerre_pair, monic_laguerre, standard_laguerre, standard_to_monic_shift,
                                uvarov_laguerre, uvarov_laguerre_closed_forms)
from quasispec.ops import cd_kernel, monomial_coeffs
from quasispec.poly import Poly
from quasispec.quasi import QuasiSpec, cf_spec, propagate_shift, restored_recurrence


def test_pair_examples():
    rec = laguerre_pair(0, 6)
    assert rec.c[1:6] == (1, 3, 5, 7, 9)
    assert [rec.lam[n + 1] for n in range(1, 5)] == [n * n for n in range(1, 5)]
    assert laguerre_pair(1, 3).c[1] == 2
    with pytest.raises(InvalidAlpha):
        laguerre_pair(-1, 4)
    assert laguerre_pair(-2, 2).lam[2] == -1
    with pytest.raises(InvalidAlpha):
        laguerre_pair(-2, 3)
    assert laguerre_pair(0.5, 3, exact=False).mu0 == pytest.approx(math.gamma(1.5))


def test_monic_against_sympy():
    x = sp.symbols("x")
    for al in (Fraction(0), Fraction(1, 2), Fraction(3)):
        s_al = sp.Rational(al.numerator, al.denominator)
        for n in range(8):
            ref = sp.Poly(sp.expand(sp.assoc_laguerre(n, s_al, x) * (-1) ** n * sp.factorial(n)), x)
            coeffs = [sp.Rational(c.numerator, c.denominator) for c in monic_laguerre(al, n).coeffs]
            assert list(reversed(ref.all_coeffs())) == coeffs


def test_standard_normalization_and_shift():
    p = standard_laguerre(Fraction(1), 3)
    assert p.leading == Fraction(-1, 6)
    al, n, b = Fraction(1, 2), 5, Fraction(7, 3)
    lhs = standard_laguerre(al, n) + standard_laguerre(al, n - 1) * b
    rhs = monic_laguerre(al, n) + monic_laguerre(al, n - 1) * standard_to_monic_shift(b, n)
    assert lhs * ((-1) ** n * math.factorial(n)) == rhs


def test_gen_binomial():
    assert gen_binomial(Fraction(7, 2), 2) == Fraction(35, 8)
    assert gen_binomial(5, 0) == 1


def test_geronimus_closed_form_examples():
    cf = geronimus_laguerre_closed_forms(Fraction(3, 2))
    assert cf["chi"](5) == 5
    assert cf["lambda_qg_next"](3) == 2 * (Fraction(3, 2) + 2)
    gd = geronimus_laguerre(Fraction(3, 2), 10)
    spec = QuasiSpec(gd, propagate_shift(gd, cf["seeds"](1), cf["seeds"](2)))
    assert cf_spec(spec).C_const == 0


@pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(5, 2)])
def test_closed_forms_match_generic(alpha):
    gd = geronimus_laguerre(alpha, 22)
    cf = geronimus_laguerre_closed_forms(alpha)
    spec = QuasiSpec(gd, propagate_shift(gd, alpha, alpha + 1))
    rr = restored_recurrence(spec)
    for n in range(1, 21):
        assert gd.chi[n] == cf["chi"](n)
        assert spec.shift[n] == cf["beta"](n)
    for n in range(1, 20):
        assert gd.c_g[n + 1] == cf["c_g_next"](n)
        assert gd.lambda_g[n + 1] == cf["lambda_g_next"](n)
        assert rr.c_q[n + 1] == cf["c_qg_next"](n)
        assert rr.lambda_q[n + 1] == cf["lambda_qg_next"](n)


def test_uvarov_closed_form_examples():
    uf = uvarov_laguerre_closed_forms(0)
    assert uf["kernel_at_zero"](4) == 4
    assert uf["t"](3) == Fraction(-3, 4)
    for al in (Fraction(0), Fraction(1, 2), Fraction(2)):
        rec = laguerre_pair(al, 14)
        uf = uvarov_laguerre_closed_forms(al)
        ud = uvarov_laguerre(al, 13)
        for n in range(1, 13):
            assert cd_kernel(rec, n - 1, 0, 0) == uf["kernel_at_zero"](n)
            assert ud.t[n] == uf["t"](n)


def test_float_mode():
    gd = geronimus_laguerre(1.5, 10, exact=False)
    assert gd.chi[4] == pytest.approx(4.0)
    assert isinstance(gd.c_g[2], float)
