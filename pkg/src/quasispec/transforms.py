"""Canonical Christoffel, Geronimus and Uvarov transforms at a point ``a``.

Each constructor caches ``P_n(a)`` (and ``Q_n(a)``, ``K_n(a, a)`` where needed)
once and derives the transformed recurrence coefficients from the cache.
The ``*_data.rec`` property exposes the transformed family as a plain
:class:`~quasispec.ops.RecurrencePair`, with ``lambda_1`` set to the
transformed functional's value at 1 relative to the base normalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import QuasiDefFail, ZeroAtNode
from .ops import RecurrencePair, cd_kernel, cd_kernel_values, eval_all, numerator_values
from .poly import Poly

# relative distance below which the kernel quotient is replaced by the CD sum
KERNEL_SWITCH = 1e-8


def vanishes(v, scale=1.0) -> bool:
    """Exact zero test for rationals, roundoff-aware test for floats."""
    if isinstance(v, float):
        return abs(v) <= 1e-14 * max(1.0, abs(scale))
    return v == 0


def _near_mass(x, a) -> bool:
    if isinstance(x, Poly):
        return True
    if isinstance(x, float) or isinstance(a, float):
        return abs(x - a) < KERNEL_SWITCH * (1 + abs(a))
    return x == a


def _values_at(rec: RecurrencePair, n_max: int, a):
    """P_0(a)..P_{n_max}(a) with the magnitude of the two recurrence terms for each."""
    vals = [1]
    scales = [1]
    prev = 0
    for k in range(1, n_max + 1):
        t1 = (a - rec.c[k]) * vals[-1]
        t2 = rec.lam[k] * prev
        prev = vals[-1]
        vals.append(t1 - t2)
        scales.append(max(abs(t1), abs(t2)))
    return vals, scales


# --------------------------------------------------------------------------
# Christoffel


@dataclass(frozen=True)
class ChristoffelData:
    base: RecurrencePair
    a: object
    n_max: int
    p_at_a: tuple
    c_c: tuple
    lambda_c: tuple

    def ratio(self, k):
        """P_k(a) / P_{k-1}(a)."""
        return self.p_at_a[k] / self.p_at_a[k - 1]

    @property
    def rec(self) -> RecurrencePair:
        return RecurrencePair(self.c_c, self.lambda_c, self.lambda_c[1])


def christoffel(rec: RecurrencePair, a, n_max: Optional[int] = None) -> ChristoffelData:
    """Kernel polynomials C_n(x; a) for the functional (x - a) L."""
    n_max = rec.n_max if n_max is None else n_max
    rec.check_degree(n_max)
    pa, scales = _values_at(rec, n_max, a)
    for n in range(1, n_max + 1):
        if vanishes(pa[n], scales[n]):
            raise ZeroAtNode(n, pa[n])
    r = [None] + [pa[k] / pa[k - 1] for k in range(1, n_max + 1)]
    # kernel family of degree <= n_max - 1
    c_c = [None] + [rec.c[n + 1] - r[n] + r[n + 1] for n in range(1, n_max)]
    lam_c = [None, -rec.lam[1] * pa[1]] + [rec.lam[n] * r[n] / r[n - 1] for n in range(2, n_max)]
    return ChristoffelData(rec, a, n_max, tuple(pa), tuple(c_c), tuple(lam_c[: len(c_c)]))


def eval_kernel_poly(cd: ChristoffelData, n: int, x):
    """C_n(x; a); the quotient form away from ``a``, the CD-sum form near it."""
    rec = cd.base
    rec.check_degree(n, cd.n_max - 1)
    if n == 0:
        return Poly.const(1) if isinstance(x, Poly) else 1
    if _near_mass(x, cd.a):
        return rec.lam_product(n + 1) * cd_kernel(rec, n, x, cd.a) / cd.p_at_a[n]
    px = eval_all(rec, n + 1, x)
    return (px[n + 1] - cd.ratio(n + 1) * px[n]) / (x - cd.a)


# --------------------------------------------------------------------------
# Geronimus


@dataclass(frozen=True)
class GeronimusData:
    """Geronimus data. ``chi[0]`` is 0 by convention (G_0 = P_0)."""

    base: RecurrencePair
    a: object
    M: object
    mass_ratio: object
    n_max: int
    p_at_a: tuple
    chi: tuple
    c_g: tuple
    lambda_g: tuple

    @property
    def rec(self) -> RecurrencePair:
        return RecurrencePair(self.c_g, self.lambda_g, self.lambda_g[1])


def geronimus(rec: RecurrencePair, a, M=None, n_max: Optional[int] = None, *,
              mass_ratio=None) -> GeronimusData:
    """Geronimus transform at ``a`` with mass ``M``.

    Only ``M / L(1)`` enters the polynomials, so callers that keep L(1)
    symbolic (Laguerre with ``M = Gamma(alpha)``) pass ``mass_ratio`` instead.
    """
    n_max = rec.n_max if n_max is None else n_max
    rec.check_degree(n_max)
    if mass_ratio is None:
        if M is None:
            raise ValueError("need M or mass_ratio")
        if rec.mu0 is None:
            raise ValueError("L(1) unknown for this recurrence; pass mass_ratio")
        if vanishes(M):
            raise QuasiDefFail(0, "M = 0")
        mass_ratio = M / rec.mu0
    elif M is None and rec.mu0 is not None:
        M = mass_ratio * rec.mu0
    if vanishes(mass_ratio):
        raise QuasiDefFail(0, "M = 0")

    pa, _ = _values_at(rec, n_max, a)
    # num_n = Q_{n-1}(a) + (M/L(1)) P_n(a) obeys the P-recurrence, so
    # chi_n = -num_n/num_{n-1} follows a ratio recursion that cannot overflow.
    chi = [0]
    if n_max >= 1:
        q0 = numerator_values(rec, 0, a)[1]
        first = q0 + mass_ratio * pa[1]
        if vanishes(first, abs(q0) + abs(mass_ratio * pa[1])):
            raise QuasiDefFail(1, "L(1) Q_0(a) + M P_1(a) = 0")
        chi.append(-first / mass_ratio)
    for n in range(1, n_max):
        t1, t2 = rec.c[n + 1] - a, rec.lam[n + 1] / chi[n]
        nxt = t1 - t2
        if vanishes(nxt, max(abs(t1), abs(t2))):
            raise QuasiDefFail(n + 1, "L(1) Q_n(a) + M P_{n+1}(a) = 0")
        chi.append(nxt)

    c_g = [None] + [rec.c[n + 1] + chi[n] - chi[n + 1] for n in range(0, n_max)]
    lam_g = [None, mass_ratio * rec.lam[1]]
    if n_max >= 2:
        lam_g.append(chi[1] / mass_ratio)
    lam_g += [rec.lam[n] * chi[n] / chi[n - 1] for n in range(2, n_max)]
    return GeronimusData(rec, a, M, mass_ratio, n_max, tuple(pa), tuple(chi),
                         tuple(c_g), tuple(lam_g))


def eval_geronimus(gd: GeronimusData, n: int, x):
    """G_n(x; a) = P_n(x) + chi_n(a) P_{n-1}(x)."""
    gd.base.check_degree(n, gd.n_max)
    p = eval_all(gd.base, n, x)
    if n == 0:
        return p[0]
    return p[n] + gd.chi[n] * p[n - 1]


# --------------------------------------------------------------------------
# Uvarov


@dataclass(frozen=True)
class UvarovData:
    """Uvarov data.

    ``t[0] = 0``. ``tr[n]`` is ``t_n P_n(a) / P_{n-1}(a)`` computed without the
    division, with ``tr[0] = M`` (its limiting value, needed for lambda^u_2).
    ``lambda_1`` of the base recurrence is taken as L(1).
    """

    base: RecurrencePair
    a: object
    M: object
    n_max: int
    p_at_a: tuple
    kernel_aa: tuple  # K_0(a,a) .. K_{n_max-1}(a,a)
    t: tuple
    tr: tuple
    c_u: tuple
    lambda_u: tuple

    @property
    def rec(self) -> RecurrencePair:
        return RecurrencePair(self.c_u, self.lambda_u, self.lambda_u[1])


def uvarov(rec: RecurrencePair, a, M, n_max: Optional[int] = None) -> UvarovData:
    """Uvarov transform: the functional L + M delta_a."""
    n_max = rec.n_max if n_max is None else n_max
    rec.check_degree(n_max)
    pa, _ = _values_at(rec, n_max, a)
    kaa = cd_kernel_values(rec, n_max - 1, a, a) if n_max >= 1 else []
    t = [0]
    tr = [M]
    norm = 1
    for n in range(1, n_max + 1):
        norm = norm * rec.lam[n]
        denom = 1 + M * kaa[n - 1]
        if vanishes(denom, 1 + abs(M * kaa[n - 1])):
            raise QuasiDefFail(n, "M = -1/K_{n-1}(a,a)")
        t.append(M * pa[n] * pa[n - 1] / (norm * denom))
        tr.append(M * pa[n] * pa[n] / (norm * denom))
    c_u = [None] + [rec.c[n + 1] - t[n] + t[n + 1] for n in range(0, n_max)]
    lam_u = [None, rec.lam[1] + M]
    for n in range(1, n_max - 1 + 1):
        if n + 1 > n_max:
            break
        den = rec.lam[n] + tr[n - 1]
        if vanishes(den, abs(rec.lam[n]) + abs(tr[n - 1])):
            raise QuasiDefFail(n, "vanishing Uvarov norm")
        lam_u.append(rec.lam[n] * (rec.lam[n + 1] + tr[n]) / den)
    return UvarovData(rec, a, M, n_max, tuple(pa), tuple(kaa), tuple(t), tuple(tr),
                      tuple(c_u), tuple(lam_u[: n_max + 1]))


def eval_uvarov(ud: UvarovData, n: int, x):
    """U_n(x; a) = P_n(x) - t_n C_{n-1}(x; a)."""
    rec = ud.base
    rec.check_degree(n, ud.n_max)
    p = eval_all(rec, n, x)
    if n == 0:
        return p[0]
    if _near_mass(x, ud.a):
        k = cd_kernel(rec, n - 1, x, ud.a)
        return p[n] - ud.M * ud.p_at_a[n] * k / (1 + ud.M * ud.kernel_aa[n - 1])
    return p[n] - (ud.t[n] * p[n] - ud.tr[n] * p[n - 1]) / (x - ud.a)


def eval_family(data, n: int, x):
    """Evaluate the transformed family of any of the three data types."""
    if isinstance(data, ChristoffelData):
        return eval_kernel_poly(data, n, x)
    if isinstance(data, GeronimusData):
        return eval_geronimus(data, n, x)
    if isinstance(data, UvarovData):
        return eval_uvarov(data, n, x)
    raise TypeError(type(data))
