"""Monic orthogonal polynomial sequences defined by their recurrence.

The sequences satisfy ``x P_n = P_{n+1} + c_{n+1} P_n + lambda_{n+1} P_{n-1}``
with ``P_0 = 1`` and ``P_{-1} = 0``. Coefficients are 1-indexed throughout.

Every evaluator accepts either a scalar ``x`` or a :class:`~quasispec.poly.Poly`;
in the latter case the result is the polynomial itself, which gives exact
monomial expansions for free when the coefficients are rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Optional, Sequence

from .errors import DegreeOutOfRange
from .poly import X, Poly


def to_exact(v):
    """Convert ints, decimal strings and floats to :class:`Fraction`."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        return Fraction(v).limit_denominator(10**12) if v != int(v) else Fraction(int(v))
    return Fraction(v)


def is_exact_value(v) -> bool:
    return isinstance(v, (int, Fraction))


@dataclass(frozen=True)
class RecurrencePair:
    """Recurrence coefficients ``c_1..c_N`` and ``lambda_1..lambda_N``.

    ``c[0]`` and ``lam[0]`` are unused padding so that ``c[n]`` is ``c_n``.
    ``lambda_1`` is a free normalization (default 1); ``mu0`` is the moment
    L(1), or ``None`` when it is carried symbolically (e.g. Gamma(alpha+1)).
    """

    c: tuple
    lam: tuple
    mu0: Optional[object] = None

    @classmethod
    def from_lists(cls, c: Sequence, lam: Sequence, mu0=None) -> "RecurrencePair":
        if len(c) != len(lam):
            raise ValueError("c and lambda must have the same length")
        # bare ints would turn into floats on the first true division
        c = [Fraction(v) if isinstance(v, int) else v for v in c]
        lam = [Fraction(v) if isinstance(v, int) else v for v in lam]
        return cls((None, *c), (None, *lam), mu0)

    @classmethod
    def from_functions(cls, c_fn: Callable[[int], object], lam_fn: Callable[[int], object],
                       n_max: int, mu0=None) -> "RecurrencePair":
        """Materialize closed-form generators ``c_fn(n)``, ``lam_fn(n)`` for n = 1..n_max."""
        return cls.from_lists([c_fn(n) for n in range(1, n_max + 1)],
                              [lam_fn(n) for n in range(1, n_max + 1)], mu0)

    @property
    def n_max(self) -> int:
        return len(self.c) - 1

    @property
    def exact(self) -> bool:
        return all(is_exact_value(v) for v in self.c[1:] + self.lam[1:])

    def check_degree(self, n: int, hi: Optional[int] = None):
        hi = self.n_max if hi is None else hi
        if n < 0 or n > hi:
            raise DegreeOutOfRange(f"degree {n} outside [0, {hi}]")

    def lam_product(self, n: int):
        """lambda_1 * ... * lambda_n (empty product is 1)."""
        prod = 1
        for k in range(1, n + 1):
            prod = prod * self.lam[k]
        return prod

    def truncated(self, n_max: int) -> "RecurrencePair":
        return RecurrencePair(self.c[: n_max + 1], self.lam[: n_max + 1], self.mu0)


class PolyPair(NamedTuple):
    upper: object  # P_n(x)
    lower: object  # P_{n-1}(x)
    n: int
    x: object


def eval_all(rec: RecurrencePair, n: int, x) -> list:
    """Return ``[P_0(x), ..., P_n(x)]``."""
    rec.check_degree(n)
    vals = [1 if not isinstance(x, Poly) else Poly.const(1)]
    prev = 0
    for k in range(1, n + 1):
        cur = vals[-1]
        vals.append((x - rec.c[k]) * cur - rec.lam[k] * prev)
        prev = cur
    return vals


def eval_pair(rec: RecurrencePair, n: int, x) -> PolyPair:
    vals = eval_all(rec, n, x)
    lower = vals[n - 1] if n >= 1 else 0
    return PolyPair(vals[n], lower, n, x)


def eval_ops(rec: RecurrencePair, n: int, x):
    """P_n(x) by forward recurrence."""
    return eval_all(rec, n, x)[n]


def monomial_coeffs(rec: RecurrencePair, n: int) -> Poly:
    """Monomial expansion of P_n, via the recurrence applied to coefficient vectors."""
    return eval_ops(rec, n, X)


def horner(p: Poly, x):
    return p(x)


def eval_numerator(rec: RecurrencePair, n: int, x):
    """First-kind associated polynomial Q_n(x).

    Uses ``Q_{-1} = 0``, ``Q_0 = 1`` and ``Q_k = (x - c_{k+1}) Q_{k-1} - lambda_{k+1} Q_{k-2}``,
    so Q_n has degree n and needs ``c_{n+1}``.
    """
    if n < -1:
        raise DegreeOutOfRange(f"numerator index {n} < -1")
    if n == -1:
        return 0
    rec.check_degree(n + 1)
    prev, cur = 0, (1 if not isinstance(x, Poly) else Poly.const(1))
    for k in range(1, n + 1):
        prev, cur = cur, (x - rec.c[k + 1]) * cur - rec.lam[k + 1] * prev
    return cur


def numerator_values(rec: RecurrencePair, n: int, x) -> list:
    """``[Q_{-1}(x), Q_0(x), ..., Q_n(x)]`` (note the offset: index k holds Q_{k-1})."""
    vals = [0, 1]
    for k in range(1, n + 1):
        vals.append((x - rec.c[k + 1]) * vals[-1] - rec.lam[k + 1] * vals[-2])
    return vals


def norm_squared(rec: RecurrencePair, n: int):
    """L[P_n^2] = lambda_1 ... lambda_{n+1} under the stored lambda_1 normalization."""
    rec.check_degree(n, rec.n_max - 1)
    return rec.lam_product(n + 1)


def cd_kernel_values(rec: RecurrencePair, n: int, x, a) -> list:
    """Partial kernels ``[K_0(x, a), ..., K_n(x, a)]``."""
    rec.check_degree(n, rec.n_max - 1)
    px = eval_all(rec, n, x)
    pa = eval_all(rec, n, a)
    out = []
    acc = 0
    norm = 1
    for j in range(n + 1):
        norm = norm * rec.lam[j + 1]
        acc = acc + px[j] * pa[j] / norm
        out.append(acc)
    return out


def cd_kernel(rec: RecurrencePair, n: int, x, a):
    """K_n(x, a) = sum_{j<=n} P_j(x) P_j(a) / (lambda_1 ... lambda_{j+1})."""
    return cd_kernel_values(rec, n, x, a)[n]


def cd_quotient(rec: RecurrencePair, n: int, x, a):
    """Right-hand side of the Christoffel-Darboux identity (x != a)."""
    px = eval_all(rec, n + 1, x)
    pa = eval_all(rec, n + 1, a)
    return (px[n + 1] * pa[n] - pa[n + 1] * px[n]) / (x - a)


def jacobi_entries(rec: RecurrencePair, n: int):
    """Diagonal ``c_1..c_n`` and squared off-diagonal ``lambda_2..lambda_n``."""
    rec.check_degree(n)
    return list(rec.c[1 : n + 1]), list(rec.lam[2 : n + 1])
