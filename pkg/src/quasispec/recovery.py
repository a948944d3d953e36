"""Recovery of the source polynomials from quasi and transformed families.

Every public function here returns a :class:`RecoveryCertificate`: the
constants of the identity, the largest relative residual over the sample
points, and the label of the formula variant that was accepted.  Where a
printed formula and its algebraically consistent form disagree, both are
evaluated; the accepted variant must vanish and beat every rejected one by
``VARIANT_GAP``.

Sample points may include the polynomial ``X``, in which case the residual
is a polynomial and ``residual_max`` is exactly zero for a valid identity
in rational mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Sequence

from .errors import EvalAtMass, NoVariantValid, PartnerDegenerate
from .ops import eval_all
from .poly import Poly, X, magnitude
from .quasi import QuasiSpec, U_VARIANTS, _u_entries, diffeq_coeffs_g, eval_quasi, transfer_matrix_g
from .transforms import (ChristoffelData, GeronimusData, UvarovData, eval_geronimus,
                         eval_kernel_poly, eval_uvarov, vanishes)

RESIDUAL_TOL = 1e-8
VARIANT_GAP = 1e4
SAMPLE_COUNT = 25
SAMPLE_MARGIN = 1e-6


@dataclass(frozen=True)
class RecoveryCertificate:
    identity: str
    n: int
    constants: Dict[str, object]
    residual_max: object
    formula_variant: str
    variant_residuals: Dict[str, object] = field(default_factory=dict)
    gap: Optional[float] = None
    note: str = ""

    @property
    def ok(self) -> bool:
        return float(self.residual_max) <= RESIDUAL_TOL

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "n": self.n,
            "constants": {k: float(v) for k, v in sorted(self.constants.items())},
            "residual_max": float(self.residual_max),
            "formula_variant": self.formula_variant,
            "variant_residuals": {k: float(v) for k, v in sorted(self.variant_residuals.items())},
            "gap": None if self.gap is None or math.isinf(self.gap) else float(self.gap),
            "note": self.note,
        }


def sample_points(a=0.0, lo=None, hi=None, count: int = SAMPLE_COUNT,
                  avoid: Sequence[float] = ()) -> list:
    """Chebyshev points on ``[a + 0.5, a + 30]`` nudged away from ``a`` and ``avoid``."""
    a = float(a)
    lo = a + 0.5 if lo is None else float(lo)
    hi = a + 30.0 if hi is None else float(hi)
    mid, half = (lo + hi) / 2, (hi - lo) / 2
    pts = sorted(mid + half * math.cos((2 * k + 1) * math.pi / (2 * count)) for k in range(count))
    bad = [a, *map(float, avoid)]
    out = []
    for x in pts:
        for b in bad:
            if abs(x - b) < SAMPLE_MARGIN:
                x = b + SAMPLE_MARGIN if x >= b else b - SAMPLE_MARGIN
        out.append(x)
    return out


# --------------------------------------------------------------------------
# helpers


def _relative(res, terms):
    scale = max([1] + [magnitude(t) for t in terms])
    return magnitude(res) / scale


def _max_residual(fn: Callable, xs) -> object:
    worst = 0
    for x in xs:
        res, terms = fn(x)
        worst = max(worst, _relative(res, terms))
    return worst


def _select(identity, n, variants: Dict[str, tuple], xs, preferred="derived") -> RecoveryCertificate:
    """Evaluate each ``label -> (constants, residual_fn)`` and accept one.

    Degenerate inputs where every variant vanishes accept ``preferred``.
    """
    residuals = {}
    for label, (_, fn) in variants.items():
        try:
            residuals[label] = _max_residual(fn, xs)
        except ZeroDivisionError:
            residuals[label] = math.inf
    if len(variants) == 1:
        label = next(iter(variants))
        return RecoveryCertificate(identity, n, variants[label][0], residuals[label], label, residuals)

    order = sorted(residuals, key=lambda k: (residuals[k], k != preferred))
    best = order[0]
    passing = [k for k in order if residuals[k] <= RESIDUAL_TOL]
    if not passing:
        raise NoVariantValid({k: float(v) for k, v in residuals.items()})
    if len(passing) == len(order):
        pick = preferred if preferred in passing else best
        return RecoveryCertificate(identity, n, variants[pick][0], residuals[pick], pick,
                                   residuals, None, "all variants agree on this input")
    rejected = min(float(residuals[k]) for k in order if k not in passing)
    gap = math.inf if residuals[best] == 0 else rejected / float(residuals[best])
    if len(passing) > 1 or gap < VARIANT_GAP:
        raise NoVariantValid({k: float(v) for k, v in residuals.items()})
    return RecoveryCertificate(identity, n, variants[best][0], residuals[best], best, residuals, gap)


def _default_xs(a, xs):
    return sample_points(a) if xs is None else list(xs)


def _check_mass(xs, a):
    for x in xs:
        if not isinstance(x, Poly) and x == a:
            raise EvalAtMass(f"sample point equals mass point {a}")


def _p_pair(rec, n, x):
    p = eval_all(rec, n, x)
    return p[n], (p[n - 1] if n >= 1 else 0 * p[0])


# --------------------------------------------------------------------------
# quasi-Geronimus identities


def source_from_quasi_geronimus_pair(spec: QuasiSpec, n: int, sample_xs=None) -> RecoveryCertificate:
    """``j_n P_n = d_n G^Q_{n+1} + k_n G^Q_n`` and ``j_n P_{n-1} = -M21 G^Q_{n+1} + l_n G^Q_n``."""
    xs = _default_xs(spec.base.a, sample_xs)
    rec = spec.rec
    variants = {}
    for label in ("derived", "printed"):
        tm = transfer_matrix_g(spec, n, label)
        j_n = tm.det()

        def fn(x, tm=tm, j_n=j_n):
            pn, pm = _p_pair(rec, n, x)
            g1, g0 = eval_quasi(spec, n + 1, x), eval_quasi(spec, n, x)
            jx = j_n(x)
            top = (jx * pn, tm.a22(x) * g1, tm.a12(x) * g0)
            bot = (jx * pm, tm.a21(x) * g1, tm.a11(x) * g0)
            r1 = top[0] - top[1] + top[2]
            r2 = bot[0] + bot[1] - bot[2]
            if _relative(r1, top) >= _relative(r2, bot):
                return r1, top
            return r2, bot

        k_n = -tm.a12.coeff(0)
        variants[label] = ({"k_n": k_n}, fn)
    return _select("quasi_geronimus_pair", n, variants, xs)


def geronimus_step_identity(gd: GeronimusData, n: int, sample_xs=None) -> RecoveryCertificate:
    """``(x - a) P_n = G_{n+1} + (lambda_{n+1}/chi_n) G_n``; the printed form has a minus sign."""
    xs = _default_xs(gd.a, sample_xs)
    rec = gd.base
    if vanishes(gd.chi[n]):
        raise PartnerDegenerate(f"chi_{n}(a) = 0")
    coef = rec.lam[n + 1] / gd.chi[n]
    variants = {}
    for label, sign in (("derived", 1), ("printed", -1)):
        def fn(x, sign=sign):
            terms = ((x - gd.a) * eval_all(rec, n, x)[n], eval_geronimus(gd, n + 1, x),
                     sign * coef * eval_geronimus(gd, n, x))
            return terms[0] - terms[1] - terms[2], terms
        variants[label] = ({"coef": sign * coef}, fn)
    return _select("geronimus_step", n, variants, xs)


def recover_via_geronimus_partner(spec: QuasiSpec, gd2: GeronimusData, n: int,
                                  sample_xs=None) -> RecoveryCertificate:
    """``(x - gamma_n) P_n = G^Q_{n+1}(x; a1) + eta_n G_n(x; a2)``."""
    xs = _default_xs(spec.base.a, sample_xs)
    rec, chi1, beta = spec.rec, spec.base.chi, spec.shift
    if n == 0:
        eta = 0
    else:
        if vanishes(gd2.chi[n]):
            raise PartnerDegenerate(f"chi_{n}(a2) = 0")
        eta = (rec.lam[n + 1] - beta[n + 1] * chi1[n]) / gd2.chi[n]
    gamma = rec.c[n + 1] - chi1[n + 1] - beta[n + 1] - eta

    def fn(x):
        terms = ((x - gamma) * eval_all(rec, n, x)[n], eval_quasi(spec, n + 1, x),
                 eta * eval_geronimus(gd2, n, x))
        return terms[0] - terms[1] - terms[2], terms

    return _select("geronimus_partner", n, {"derived": ({"gamma_n": gamma, "eta_n": eta}, fn)}, xs)


def recover_via_uvarov_partner(spec: QuasiSpec, ud2: UvarovData, n: int,
                               sample_xs=None) -> RecoveryCertificate:
    """``zeta_n (x - eta_n) P_n = G^Q_{n+1}(x; a1) + gamma_n (x - a2) U_n(x; a2)``.

    ``s_n`` is read as ``t_n`` of the partner Uvarov data; ``s_n P_n(a2)/P_{n-1}(a2)``
    is its division-free ``tr_n``.
    """
    xs = _default_xs(spec.base.a, sample_xs)
    rec, chi1, beta = spec.rec, spec.base.chi, spec.shift
    if n < 1:
        raise PartnerDegenerate("needs n >= 1")
    s_n, tr_n = ud2.t[n], ud2.tr[n]
    if vanishes(tr_n):
        raise PartnerDegenerate(f"t_{n}(a2) P_{n}(a2) = 0")
    c, lam, a2 = rec.c[n + 1], rec.lam[n + 1], ud2.a
    variants = {}
    for label, (first, second) in (("derived", (lam, c)), ("printed", (c, lam))):
        gamma = (first - chi1[n] * beta[n + 1]) / tr_n
        zeta = 1 + gamma
        if vanishes(zeta):
            raise PartnerDegenerate("zeta_n = 0")
        eta = (second + (s_n + a2) * gamma - beta[n + 1] - chi1[n + 1]) / zeta

        def fn(x, gamma=gamma, zeta=zeta, eta=eta):
            terms = (zeta * (x - eta) * eval_all(rec, n, x)[n], eval_quasi(spec, n + 1, x),
                     gamma * (x - a2) * eval_uvarov(ud2, n, x))
            return terms[0] - terms[1] - terms[2], terms

        variants[label] = ({"gamma_n": gamma, "zeta_n": zeta, "eta_n": eta, "s_n": s_n}, fn)
    return _select("uvarov_partner", n, variants, xs)


def recover_via_christoffel_partner(spec: QuasiSpec, cd2: ChristoffelData, n: int,
                                    sample_xs=None) -> RecoveryCertificate:
    """``(x - eta_n) P_n = G^Q_{n+1}(x; a1) + gamma_n (x - a2) C_{n-1}(x; a2)``.

    The printed constants use ``chi_{n+1}(a1)`` in the products with ``beta_{n+1}``
    (variant ``"printed"``); the identity needs ``chi_n(a1)``.
    """
    xs = _default_xs(spec.base.a, sample_xs)
    rec, chi1, beta = spec.rec, spec.base.chi, spec.shift
    if n < 1:
        raise PartnerDegenerate("needs n >= 1")
    pa = cd2.p_at_a
    if vanishes(pa[n]):
        raise PartnerDegenerate(f"P_{n}(a2) = 0")
    ratio = pa[n - 1] / pa[n]
    c, lam, a2 = rec.c[n + 1], rec.lam[n + 1], cd2.a
    variants = {}
    for label, idx in (("derived", n), ("printed", n + 1)):
        gamma = (beta[n + 1] * chi1[idx] - lam) * ratio
        eta = c - beta[n + 1] - chi1[n + 1] + (lam - beta[n + 1] * chi1[idx]) * ratio

        def fn(x, gamma=gamma, eta=eta):
            terms = ((x - eta) * eval_all(rec, n, x)[n], eval_quasi(spec, n + 1, x),
                     gamma * (x - a2) * eval_kernel_poly(cd2, n - 1, x))
            return terms[0] - terms[1] - terms[2], terms

        variants[label] = ({"gamma_n": gamma, "eta_n": eta}, fn)
    return _select("christoffel_partner", n, variants, xs)


# --------------------------------------------------------------------------
# Uvarov and quasi-Uvarov identities


def uvarov_pair_determinant(ud: UvarovData, n: int, sign: int = 1) -> Poly:
    """D_n(x); ``sign=-1`` flips the ``t_n t_{n+1} P_{n+1}(a)/(lambda_{n+1} P_{n-1}(a))`` term."""
    rec, t, tr, a = ud.base, ud.t, ud.tr, ud.a
    lam = rec.lam[n + 1]
    u = X - a - t[n + 1]
    return u * ((X - a - t[n]) + (X - rec.c[n + 1]) * (tr[n] / lam)) + sign * tr[n + 1] * tr[n] / lam


def source_from_uvarov_pair(ud: UvarovData, n: int, sample_xs=None) -> RecoveryCertificate:
    """``D_n P_n = (x - a) [(tr_n/lambda_{n+1}) U_{n+1} + (x - a - t_{n+1}) U_n]``."""
    xs = _default_xs(ud.a, sample_xs)
    rec, a = ud.base, ud.a
    if n < 1:
        raise PartnerDegenerate("needs n >= 1")
    coef = ud.tr[n] / rec.lam[n + 1]
    variants = {}
    for label, sign in (("derived", 1), ("minus_sign", -1)):
        d_n = uvarov_pair_determinant(ud, n, sign)

        def fn(x, d_n=d_n):
            terms = (d_n(x) * eval_all(rec, n, x)[n],
                     (x - a) * coef * eval_uvarov(ud, n + 1, x),
                     (x - a) * (x - a - ud.t[n + 1]) * eval_uvarov(ud, n, x))
            return terms[0] - terms[1] - terms[2], terms

        variants[label] = ({"coef": coef}, fn)
    return _select("uvarov_pair", n, variants, xs)


def source_from_quasi_uvarov_pair(spec: QuasiSpec, n: int, sample_xs=None) -> RecoveryCertificate:
    """``(w_n/(x-a)) P_n = e_n U^Q_{n+1} + h_n U^Q_n``, checked multiplied through by ``x - a``."""
    a = spec.base.a
    xs = _default_xs(a, sample_xs)
    _check_mass(xs, a)
    rec = spec.rec
    variants = {}
    for label in U_VARIANTS:
        if label == "printed" and n < 2:
            continue
        s_n, m12, m21, e_n = _u_entries(spec, n, label)
        w_n = s_n * e_n - m12 * m21

        def fn(x, w_n=w_n, e_n=e_n, m12=m12):
            terms = (w_n(x) * eval_all(rec, n, x)[n],
                     (x - a) * e_n(x) * eval_quasi(spec, n + 1, x),
                     (x - a) * m12(x) * eval_quasi(spec, n, x))
            return terms[0] - terms[1] + terms[2], terms

        variants[label] = ({}, fn)
    return _select("quasi_uvarov_pair", n, variants, xs)


def _q_uvarov(spec: QuasiSpec, n: int):
    rec, ud, alpha = spec.rec, spec.base, spec.shift
    q = alpha[n] * ud.tr[n - 1] / rec.lam[n]
    base_const = ud.tr[n] - alpha[n] * (ud.a + ud.t[n - 1])
    return q, base_const


def recover_quasiU_via_christoffel(spec: QuasiSpec, cd2: ChristoffelData, n: int,
                                   sample_xs=None) -> RecoveryCertificate:
    """``(zeta_n x - gamma_n) P_{n-1} = (x - eta_n)(x - a2) C_{n-1}(x; a2) - (x - a1) U^Q_n(x; a1)``."""
    xs = _default_xs(spec.base.a, sample_xs)
    rec, ud, alpha = spec.rec, spec.base, spec.shift
    if n < 1 or vanishes(rec.lam[n]):
        raise PartnerDegenerate("needs n >= 1 and lambda_n != 0")
    if vanishes(cd2.p_at_a[n - 1]):
        raise PartnerDegenerate(f"P_{n-1}(a2) = 0")
    rho = cd2.p_at_a[n] / cd2.p_at_a[n - 1]
    q, base_const = _q_uvarov(spec, n)
    zeta = -alpha[n] - rho - q
    eta = ud.a + ud.t[n] + q
    gamma = base_const - eta * rho + rec.c[n] * (alpha[n] + zeta + rho)
    a1, a2 = ud.a, cd2.a

    def fn(x):
        terms = ((zeta * x - gamma) * eval_all(rec, n - 1, x)[n - 1],
                 (x - eta) * (x - a2) * eval_kernel_poly(cd2, n - 1, x),
                 (x - a1) * eval_quasi(spec, n, x))
        return terms[0] - terms[1] + terms[2], terms

    return _select("quasiU_christoffel", n,
                   {"derived": ({"zeta_n": zeta, "eta_n": eta, "gamma_n": gamma}, fn)}, xs)


def recover_quasiU_via_geronimus(spec: QuasiSpec, gd2: GeronimusData, n: int,
                                 sample_xs=None) -> RecoveryCertificate:
    """``(zeta_n x - gamma_n) P_{n-1} = (x - eta_n) G_n(x; a2) - (x - a1) U^Q_n(x; a1)``.

    The printed ``eta_n`` carries ``t_n alpha_n P_n(a1)/(lambda_n P_{n-1}(a1))`` where the
    identity needs ``alpha_n t_{n-1} P_{n-1}(a1)/(lambda_n P_{n-2}(a1))`` (variant ``"printed"``).
    """
    xs = _default_xs(spec.base.a, sample_xs)
    rec, ud, alpha = spec.rec, spec.base, spec.shift
    if n < 1 or vanishes(rec.lam[n]):
        raise PartnerDegenerate("needs n >= 1 and lambda_n != 0")
    chi2 = gd2.chi[n]
    q, base_const = _q_uvarov(spec, n)
    a1 = ud.a
    variants = {}
    q_printed = alpha[n] * ud.tr[n] / rec.lam[n]
    for label, qq in (("derived", q), ("printed", q_printed)):
        eta = a1 + ud.t[n] + qq
        zeta = chi2 - alpha[n] - qq
        gamma = base_const + eta * chi2 - rec.c[n] * qq

        def fn(x, eta=eta, zeta=zeta, gamma=gamma):
            terms = ((zeta * x - gamma) * eval_all(rec, n - 1, x)[n - 1],
                     (x - eta) * eval_geronimus(gd2, n, x),
                     (x - a1) * eval_quasi(spec, n, x))
            return terms[0] - terms[1] + terms[2], terms

        variants[label] = ({"zeta_n": zeta, "eta_n": eta, "gamma_n": gamma}, fn)
    return _select("quasiU_geronimus", n, variants, xs)


IDENTITIES = (
    "quasi_geronimus_pair", "geronimus_step", "geronimus_partner", "uvarov_partner",
    "christoffel_partner", "uvarov_pair", "quasi_uvarov_pair", "quasiU_christoffel",
    "quasiU_geronimus",
)
