"""Laguerre recurrence, its transforms at the origin, and their closed forms.

Monic Laguerre polynomials satisfy ``c_{n+1} = 2n + alpha + 1`` and
``lambda_{n+1} = n(n + alpha)``. The moment ``L(1) = Gamma(alpha + 1)`` is
never needed numerically: the Geronimus mass ``Gamma(alpha)`` enters only
through the ratio ``1/alpha``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import InvalidAlpha
from .ops import RecurrencePair, to_exact
from .poly import Poly
from .transforms import GeronimusData, UvarovData, geronimus, uvarov


def _scalar(alpha, exact):
    if exact is None:
        exact = isinstance(alpha, (int, Fraction, str))
    return (to_exact(alpha) if exact else float(alpha)), exact


def laguerre_pair(alpha, n_max: int, exact=None) -> RecurrencePair:
    """Monic Laguerre(alpha) recurrence with ``lambda_1 = 1``.

    Rational or integer ``alpha`` gives exact coefficients; pass ``exact=False``
    to force floats.  ``mu0`` is ``Gamma(alpha + 1)`` in float mode and left
    unset in exact mode.
    """
    al, exact = _scalar(alpha, exact)
    for k in range(1, n_max):
        if k + al == 0:
            raise InvalidAlpha(f"alpha = {alpha} makes lambda_{k + 1} vanish")
    one = Fraction(1) if exact else 1.0

    def lam(n):
        return one if n == 1 else (n - 1) * (n - 1 + al)

    mu0 = None
    if not exact and al > -1:
        mu0 = math.gamma(al + 1)
    return RecurrencePair.from_functions(lambda n: 2 * (n - 1) + al + 1, lam, n_max, mu0)


def geronimus_laguerre(alpha, n_max: int, exact=None) -> GeronimusData:
    """Geronimus transform at 0 with ``M = Gamma(alpha)``, i.e. ``M / L(1) = 1/alpha``."""
    rec = laguerre_pair(alpha, n_max, exact)
    al = rec.c[1] - 1
    return geronimus(rec, 0 * al, n_max=n_max, mass_ratio=1 / al)


def uvarov_laguerre(alpha, n_max: int, M=1, exact=None) -> UvarovData:
    rec = laguerre_pair(alpha, n_max, exact)
    zero = 0 * rec.c[1]
    return uvarov(rec, zero, M + zero, n_max)


def gen_binomial(z, k: int):
    """``binom(z, k)`` for arbitrary ``z`` and integer ``k >= 0``."""
    out = Fraction(1) if not isinstance(z, float) else 1.0
    for i in range(k):
        out = out * (z - i) / (i + 1)
    return out


def monic_laguerre(alpha, n: int) -> Poly:
    """Closed form ``(-1)^n n! sum_j (-1)^j binom(n + alpha, n - j) x^j / j!``."""
    al, exact = _scalar(alpha, None)
    coeffs = []
    for j in range(n + 1):
        c = gen_binomial(n + al, n - j) * math.factorial(n) / math.factorial(j)
        coeffs.append((-1) ** (n + j) * c)
    return Poly(coeffs)


def standard_laguerre(alpha, n: int) -> Poly:
    """Standard normalization ``L^{(alpha)}_n`` with leading coefficient ``(-1)^n/n!``."""
    p = monic_laguerre(alpha, n)
    return p * Fraction((-1) ** n, math.factorial(n)) if p.is_exact() else p * ((-1) ** n / math.factorial(n))


def standard_to_monic_shift(beta_std, n: int):
    """Monic shift equivalent to ``L_n + beta L_{n-1}`` in standard normalization.

    ``L_n = (-1)^n M_n / n!``, so ``L_n + b L_{n-1}`` is proportional to ``M_n - n b M_{n-1}``.
    """
    return -n * beta_std


@dataclass(frozen=True)
class ClosedForms:
    """Generator functions keyed by the quantity they produce (argument ``n``)."""

    alpha: object
    funcs: dict

    def __getitem__(self, key) -> Callable:
        return self.funcs[key]

    def keys(self):
        return self.funcs.keys()


def geronimus_laguerre_closed_forms(alpha) -> ClosedForms:
    """``chi_n``, ``c^g_{n+1}``, ``lambda^g_{n+1}``, ``beta_n``, ``c^{qg}_{n+1}``, ``lambda^{qg}_{n+1}``."""
    al, _ = _scalar(alpha, None)
    return ClosedForms(al, {
        "chi": lambda n: n,
        "c_g_next": lambda n: 2 * n + al,
        "lambda_g_next": lambda n: n * (n + al - 1),
        "beta": lambda n: n + al - 1,
        "c_qg_next": lambda n: 2 * n + al - 1,
        "lambda_qg_next": lambda n: (n - 1) * (n + al - 1),
        "seeds": lambda n: (al, al + 1)[n - 1],
    })


def uvarov_laguerre_closed_forms(alpha) -> ClosedForms:
    """``K_{n-1}(0,0) = binom(n + alpha, n - 1)`` and ``t_n`` for unit mass."""
    al, _ = _scalar(alpha, None)

    def kernel(n):
        return gen_binomial(n + al, n - 1)

    def t(n):
        b = kernel(n)
        return -(al + 1) * b / (1 + b)

    return ClosedForms(al, {"kernel_at_zero": kernel, "t": t})
