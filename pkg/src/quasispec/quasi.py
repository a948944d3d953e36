"""Order-one quasi-Geronimus and quasi-Uvarov polynomials.

A quasi polynomial of degree n is ``F_n + s_n F_{n-1}`` where ``F`` is the
Geronimus (``G``) or Uvarov (``U``) family and ``s`` the shift sequence
(``beta`` or ``alpha``). This module builds the transfer matrices that express
consecutive quasi polynomials through ``(P_n, P_{n-1})``, the resulting
second-order difference equations, and the restoration of a three-term
recurrence when the shift satisfies the restriction condition.

Several printed coefficient formulas do not survive a residual check. Each
builder therefore takes a ``variant``: ``"derived"`` is the algebraically
consistent form used by default, the other labels reproduce the printed
readings so their residuals can be reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

from .errors import (ConditionViolated, DegreeOutOfRange, DivideByZeroShift, EvalAtMass,
                     PoleHit, ZeroShiftEncountered)
from .ops import eval_all
from .poly import Poly, X, magnitude
from .transforms import GeronimusData, UvarovData, eval_family, vanishes

G_VARIANTS = ("derived", "printed")
U_VARIANTS = ("derived", "statement_sign", "printed")


# --------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class ShiftSequence:
    """Shift values ``s_1..s_N``; ``values[0]`` is padding.

    ``beta0`` (alias ``alpha0``) is the optional bookkeeping constant playing
    the role of ``s_0`` in the telescoped representations.
    """

    kind: str
    values: tuple
    seeds: Optional[tuple] = None
    beta0: object = None

    @classmethod
    def constant(cls, value, n_max: int, beta0=None) -> "ShiftSequence":
        return cls("constant", (None,) + (value,) * n_max, None, beta0)

    @classmethod
    def closed_form(cls, fn: Callable[[int], object], n_max: int, beta0=None) -> "ShiftSequence":
        return cls("closed_form", (None,) + tuple(fn(n) for n in range(1, n_max + 1)), None, beta0)

    @classmethod
    def explicit(cls, values: Sequence, beta0=None) -> "ShiftSequence":
        return cls("explicit_list", (None,) + tuple(values), None, beta0)

    @property
    def alpha0(self):
        return self.beta0

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n):
        if n < 1 or n > self.n_max:
            raise DegreeOutOfRange(f"shift index {n} outside [1, {self.n_max}]")
        return self.values[n]

    def with_beta0(self, beta0) -> "ShiftSequence":
        return ShiftSequence(self.kind, self.values, self.seeds, beta0)


@dataclass(frozen=True)
class QuasiSpec:
    base: Union[GeronimusData, UvarovData]
    shift: ShiftSequence

    @property
    def flavor(self) -> str:
        return "geronimus" if isinstance(self.base, GeronimusData) else "uvarov"

    @property
    def n_max(self) -> int:
        return min(self.base.n_max, self.shift.n_max)

    @property
    def rec(self):
        return self.base.base

    # transformed-family coefficients, c^g/lambda^g or c^u/lambda^u
    def ct(self, n):
        return self.base.c_g[n] if self.flavor == "geronimus" else self.base.c_u[n]

    def lt(self, n):
        return self.base.lambda_g[n] if self.flavor == "geronimus" else self.base.lambda_u[n]

    def transformed_n_max(self) -> int:
        seq = self.base.c_g if self.flavor == "geronimus" else self.base.c_u
        return len(seq) - 1


@dataclass(frozen=True)
class PolyMatrix2:
    """2x2 matrix of polynomials; ``rows`` maps the ``cols`` pair to the ``rows`` pair."""

    a11: Poly
    a12: Poly
    a21: Poly
    a22: Poly
    cols: tuple = ("P_n", "P_{n-1}")
    rows: tuple = ("", "")

    def det(self) -> Poly:
        return self.a11 * self.a22 - self.a12 * self.a21

    def adjugate(self) -> "PolyMatrix2":
        return PolyMatrix2(self.a22, -self.a12, -self.a21, self.a11, self.rows, self.cols)

    def apply(self, v1, v2, x):
        return (self.a11(x) * v1 + self.a12(x) * v2, self.a21(x) * v1 + self.a22(x) * v2)

    def entries(self):
        return (self.a11, self.a12, self.a21, self.a22)


@dataclass(frozen=True)
class DiffEqCoeffsG:
    n: int
    l_n: Poly
    d_n: Poly
    j_n: Poly
    m_next: Poly  # m_{n+1}
    k_n: Poly  # coefficient of G^Q_n when recovering P_n
    m21: Poly  # lower-left transfer entry
    l_next: Poly
    lam_next: object  # lambda_{n+1}
    variant: str = "derived"


@dataclass(frozen=True)
class DiffEqCoeffsU:
    n: int
    e_n: Poly
    s_n: Poly
    w_n: Poly
    y_n: Poly
    h_n: Poly
    r_next: Poly  # r_{n+1}
    s_next: Poly
    lam_next: object
    variant: str = "derived"


@dataclass(frozen=True)
class RestoredRecurrence:
    """Restored TTRR of a quasi family.

    ``lambda_q[2]`` comes from the degree-1 recurrence step (always defined);
    ``lambda2_from_beta0`` is the telescoped value ``(s_1/beta0) lambda_1``
    when ``beta0`` was supplied. ``classification`` uses ``lambda_q[k]``, k >= 3.
    """

    c_q: tuple
    lambda_q: tuple
    condition_residuals: tuple  # index n holds the residual at n (n >= 2)
    classification: str
    lambda2_from_beta0: object = None
    flavor: str = "geronimus"


@dataclass(frozen=True)
class CFSpec:
    C_const: object
    c_seq: tuple
    lambda_seq: tuple
    start_index: int = 1


# --------------------------------------------------------------------------
# evaluation


def eval_quasi(spec: QuasiSpec, n: int, x):
    """G^Q_n = G_n + beta_n G_{n-1}, or U^Q_n = U_n + alpha_n U_{n-1}."""
    if n < 0 or n > spec.n_max:
        raise DegreeOutOfRange(f"degree {n} outside [0, {spec.n_max}]")
    f_n = eval_family(spec.base, n, x)
    if n == 0:
        return f_n
    return f_n + spec.shift[n] * eval_family(spec.base, n - 1, x)


def _poly(*coeffs) -> Poly:
    return Poly(coeffs)


def _require(flavor, spec):
    if spec.flavor != flavor:
        raise ValueError(f"expected a quasi-{flavor} spec, got {spec.flavor}")


def _check_range(n, lo, hi):
    if n < lo or n > hi:
        raise DegreeOutOfRange(f"index {n} outside [{lo}, {hi}]")


# --------------------------------------------------------------------------
# quasi-Geronimus


def _g_entries(spec: QuasiSpec, n: int, variant: str):
    rec, chi, beta = spec.rec, spec.base.chi, spec.shift
    c, lam = rec.c, rec.lam
    l_n = X + (-c[n + 1] + chi[n + 1] + beta[n + 1])
    extra = c[n + 1] if variant == "printed" else 0
    m12 = _poly(chi[n] * beta[n + 1] - extra - lam[n + 1])
    q = chi[n - 1] * beta[n] / lam[n]
    m21 = _poly(1 - q)
    d_n = (X - c[n]) * q + (chi[n] + beta[n])
    return l_n, m12, m21, d_n


def transfer_matrix_g(spec: QuasiSpec, n: int, variant: str = "derived") -> PolyMatrix2:
    """Matrix taking ``(P_n, P_{n-1})`` to ``(G^Q_{n+1}, G^Q_n)``.

    ``variant="printed"`` keeps a stray ``-c_{n+1}`` in the upper-right entry.
    """
    _require("geronimus", spec)
    _check_range(n, 1, spec.n_max - 1)
    l_n, m12, m21, d_n = _g_entries(spec, n, variant)
    return PolyMatrix2(l_n, m12, m21, d_n, rows=("G^Q_{n+1}", "G^Q_n"))


def diffeq_coeffs_g(spec: QuasiSpec, n: int, variant: str = "derived") -> DiffEqCoeffsG:
    _require("geronimus", spec)
    _check_range(n, 1, spec.n_max - 2)
    rec = spec.rec
    l_n, m12, m21, d_n = _g_entries(spec, n, variant)
    l_next, m12_next, _, _ = _g_entries(spec, n + 1, variant)
    j_n = l_n * d_n - m12 * m21
    m_next = l_next * (X - rec.c[n + 1]) + m12_next
    return DiffEqCoeffsG(n, l_n, d_n, j_n, m_next, -m12, m21, l_next, rec.lam[n + 1], variant)


def _rel(res, terms, relative):
    if not relative:
        return res
    scale = max([1.0] + [float(magnitude(t)) for t in terms])
    return float(magnitude(res)) / scale


def diffeq_residual_g(spec: QuasiSpec, n: int, x, variant: str = "derived", relative: bool = False):
    """``j_n G^Q_{n+2} - A_n G^Q_{n+1} - B_n G^Q_n`` at ``x`` (a Poly gives the residual polynomial).

    With ``relative=True`` the magnitude is divided by the largest of the three terms.
    """
    dc = diffeq_coeffs_g(spec, n, variant)
    a_n = dc.d_n * dc.m_next + dc.m21 * dc.l_next * dc.lam_next
    b_n = dc.m_next * dc.k_n - dc.l_n * dc.l_next * dc.lam_next
    t0 = dc.j_n(x) * eval_quasi(spec, n + 2, x)
    t1 = a_n(x) * eval_quasi(spec, n + 1, x)
    t2 = b_n(x) * eval_quasi(spec, n, x)
    return _rel(t0 - t1 - t2, (t0, t1, t2), relative)


# --------------------------------------------------------------------------
# quasi-Uvarov


def _u_entries(spec: QuasiSpec, n: int, variant: str):
    rec, ud, alpha = spec.rec, spec.base, spec.shift
    c, lam, t, tr, a = rec.c, rec.lam, ud.t, ud.tr, ud.a
    xa = X - a
    if variant == "printed":
        pa = ud.p_at_a
        r_n = pa[n] / pa[n - 1]
        r_prev = pa[n - 1] / pa[n - 2]
        s_n = (xa - t[n + 1]) * (X - c[n + 1]) + xa * alpha[n + 1] + tr[n + 1] - t[n] * alpha[n + 1]
        m12 = _poly(t[n + 1] * alpha[n + 1] * r_n) - (xa - t[n + 1]) * lam[n + 1]
        m21 = xa + (-t[n] + t[n] * alpha[n] * r_prev / lam[n])
        e_n = X * (alpha[n] * (1 + t[n] * r_prev / lam[n])) + (r_n - t[n] * alpha[n])
        return s_n, m12, m21, e_n
    sign = -1 if variant == "statement_sign" else 1
    s_n = ((xa - t[n + 1]) * (X - c[n + 1]) + xa * alpha[n + 1]
           + (sign * tr[n + 1] - t[n] * alpha[n + 1]))
    m12 = _poly(alpha[n + 1] * tr[n]) - (xa - t[n + 1]) * lam[n + 1]
    q = alpha[n] * tr[n - 1] / lam[n]
    m21 = xa + (-t[n] - q)
    e_n = (X * (alpha[n] + q)
           + (tr[n] - alpha[n] * (a + t[n - 1]) - q * c[n]))
    return s_n, m12, m21, e_n


def transfer_matrix_u(spec: QuasiSpec, n: int, variant: str = "derived") -> PolyMatrix2:
    """Matrix taking ``(P_n, P_{n-1})`` to ``((x-a) U^Q_{n+1}, (x-a) U^Q_n)``.

    The derived entries use ``tr_k = t_k P_k(a)/P_{k-1}(a)`` and so are valid
    from n = 1; the printed reading (``variant="printed"``) divides by
    ``P_{n-2}(a)`` and needs n >= 2.
    """
    _require("uvarov", spec)
    _check_range(n, 2 if variant == "printed" else 1, spec.n_max - 1)
    s_n, m12, m21, e_n = _u_entries(spec, n, variant)
    return PolyMatrix2(s_n, m12, m21, e_n, rows=("(x-a)U^Q_{n+1}", "(x-a)U^Q_n"))


def transfer_residual_g(spec: QuasiSpec, n: int, x, variant: str = "derived", relative: bool = True):
    """Larger of the two row residuals of the Geronimus transfer matrix at ``x``."""
    tm = transfer_matrix_g(spec, n, variant)
    p = eval_all(spec.rec, n, x)
    top, bot = tm.apply(p[n], p[n - 1], x)
    g1, g0 = eval_quasi(spec, n + 1, x), eval_quasi(spec, n, x)
    r = [_rel(top - g1, (top, g1), relative), _rel(bot - g0, (bot, g0), relative)]
    return max(r, key=magnitude)


def transfer_residual_u(spec: QuasiSpec, n: int, x, variant: str = "derived", relative: bool = True):
    """Same for the Uvarov matrix, whose targets carry the factor ``x - a``."""
    tm = transfer_matrix_u(spec, n, variant)
    p = eval_all(spec.rec, n, x)
    top, bot = tm.apply(p[n], p[n - 1], x)
    xa = x - spec.base.a
    u1, u0 = xa * eval_quasi(spec, n + 1, x), xa * eval_quasi(spec, n, x)
    r = [_rel(top - u1, (top, u1), relative), _rel(bot - u0, (bot, u0), relative)]
    return max(r, key=magnitude)


def diffeq_coeffs_u(spec: QuasiSpec, n: int, variant: str = "derived") -> DiffEqCoeffsU:
    _require("uvarov", spec)
    _check_range(n, 2 if variant == "printed" else 1, spec.n_max - 2)
    rec = spec.rec
    s_n, m12, m21, e_n = _u_entries(spec, n, variant)
    s_next, m12_next, _, _ = _u_entries(spec, n + 1, variant)
    w_n = s_n * e_n - m12 * m21
    h_n = -m12
    h_next = -m12_next
    r_next = s_next * (X - rec.c[n + 1]) - h_next
    return DiffEqCoeffsU(n, e_n, s_n, w_n, -m21, h_n, r_next, s_next, rec.lam[n + 1], variant)


def _mass_guard(x, a):
    if not isinstance(x, Poly) and x == a:
        raise EvalAtMass(f"x = a = {a}")


def diffeq_residual_u(spec: QuasiSpec, n: int, x, variant: str = "derived", relative: bool = False):
    """``w_n U^Q_{n+2} - (r_{n+1} e_n - s_{n+1} lam_{n+1} y_n) U^Q_{n+1} - (r_{n+1} h_n - s_{n+1} s_n lam_{n+1}) U^Q_n``."""
    _mass_guard(x, spec.base.a)
    dc = diffeq_coeffs_u(spec, n, variant)
    lam = dc.lam_next
    a_n = dc.r_next * dc.e_n - dc.s_next * dc.y_n * lam
    b_n = dc.r_next * dc.h_n - dc.s_next * dc.s_n * lam
    t0 = dc.w_n(x) * eval_quasi(spec, n + 2, x)
    t1 = a_n(x) * eval_quasi(spec, n + 1, x)
    t2 = b_n(x) * eval_quasi(spec, n, x)
    return _rel(t0 - t1 - t2, (t0, t1, t2), relative)


# --------------------------------------------------------------------------
# restoration


def _cond_tol(spec, n):
    """Zero in rational mode; otherwise ``1e-10 (1 + T)`` with T the largest term of the condition.

    T is at least ``|lambda_{n+1}|``; it grows past it when the shifts are large,
    where products like ``s_n s_{n+1}`` carry proportionally larger roundoff.
    """
    s = spec.shift
    lam_next = spec.lt(n + 1)
    if not (isinstance(lam_next, float) or any(isinstance(v, float) for v in s.values[1:])):
        return 0
    terms = (lam_next, s[n] * spec.ct(n + 1), s[n] * spec.ct(n), s[n] * s[n], s[n] * s[n + 1],
             s[n] / s[n - 1] * spec.lt(n))
    return 1e-10 * (1 + max(abs(t) for t in terms))


def shift_condition_residual(spec: QuasiSpec, n: int):
    """``s_n (c_{n+1} - c_n + s_n - s_{n+1}) + (s_n/s_{n-1}) lam_n - lam_{n+1}`` in the transformed coefficients."""
    _check_range(n, 2, min(spec.n_max - 1, spec.transformed_n_max() - 1))
    s = spec.shift
    if vanishes(s[n - 1]):
        raise DivideByZeroShift(n - 1)
    return (s[n] * (spec.ct(n + 1) - spec.ct(n) + s[n] - s[n + 1])
            + s[n] / s[n - 1] * spec.lt(n) - spec.lt(n + 1))


def propagate_shift(base: Union[GeronimusData, UvarovData], s1, s2,
                    n_max: Optional[int] = None, beta0=None) -> ShiftSequence:
    """Unique shift sequence with seeds ``(s1, s2)`` satisfying the restriction condition."""
    c = base.c_g if isinstance(base, GeronimusData) else base.c_u
    lam = base.lambda_g if isinstance(base, GeronimusData) else base.lambda_u
    top = len(c) - 1
    n_max = top if n_max is None else min(n_max, top)
    for k, v in ((1, s1), (2, s2)):
        if vanishes(v):
            raise ZeroShiftEncountered(k)
    s = [None, s1, s2]
    for n in range(2, n_max):
        nxt = c[n + 1] - c[n] + s[n] + lam[n] / s[n - 1] - lam[n + 1] / s[n]
        if vanishes(nxt, abs(c[n + 1]) + abs(s[n]) + abs(lam[n + 1] / s[n])):
            raise ZeroShiftEncountered(n + 1)
        s.append(nxt)
    return ShiftSequence("propagated", tuple(s[: n_max + 1]), (s1, s2), beta0)


def restored_recurrence(spec: QuasiSpec, check: bool = True) -> RestoredRecurrence:
    """Restore ``c^q``, ``lambda^q`` and classify the quasi family.

    Raises :class:`ConditionViolated` at the first index whose restriction
    residual exceeds tolerance (exact zero in rational mode).
    """
    s = spec.shift
    top = min(spec.n_max, spec.transformed_n_max())
    residuals = [None, None]
    for n in range(2, top):
        res = shift_condition_residual(spec, n)
        if check and abs(res) > _cond_tol(spec, n):
            raise ConditionViolated(n, res)
        residuals.append(res)

    c_q = [None, spec.ct(1) - s[1]] + [spec.ct(n + 1) + s[n] - s[n + 1] for n in range(1, top)]
    lam_q = [None, None]
    if top >= 2:
        lam_q.append(spec.lt(2) + s[1] * (spec.ct(1) - c_q[2]))
    lam_q += [s[n] / s[n - 1] * spec.lt(n) for n in range(2, top)]
    lam2_b0 = None
    if s.beta0 is not None:
        lam2_b0 = s[1] / s.beta0 * spec.lt(1)

    tail = lam_q[3:]
    if all(v > 0 for v in tail):
        cls = "positive_definite"
    elif all(not vanishes(v) for v in tail):
        cls = "quasi_definite"
    else:
        cls = "not_orthogonal"
    return RestoredRecurrence(tuple(c_q), tuple(lam_q), tuple(residuals), cls, lam2_b0, spec.flavor)


def restored_ttrr_residual(spec: QuasiSpec, rr: RestoredRecurrence, n: int, x):
    """``F^Q_{n+1} - (x - c^q_{n+1}) F^Q_n + lambda^q_{n+1} F^Q_{n-1}`` for n >= 1."""
    return (eval_quasi(spec, n + 1, x) - (x - rr.c_q[n + 1]) * eval_quasi(spec, n, x)
            + rr.lambda_q[n + 1] * eval_quasi(spec, n - 1, x))


# --------------------------------------------------------------------------
# continued fraction and telescoped representations


def cf_spec(spec: QuasiSpec) -> CFSpec:
    s = spec.shift
    if vanishes(s[1]):
        raise DivideByZeroShift(1)
    const = s[2] + spec.lt(2) / s[1] - spec.ct(2)
    top = spec.transformed_n_max()
    return CFSpec(const, tuple(spec.ct(k) if k else None for k in range(top + 1)),
                  tuple(spec.lt(k) if k else None for k in range(top + 1)), 1)


def shift_from_cf(cf: CFSpec, n: int, depth: int, tail):
    """Backward evaluation of the continued fraction for ``s_n`` with ``tail`` standing in for ``s_{n+depth}``."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    top = len(cf.c_seq) - 1
    if n < 1 or n + depth > top:
        raise DegreeOutOfRange(f"continued fraction needs coefficients up to {n + depth}, have {top}")
    v = tail
    for k in range(n + depth - 1, n - 1, -1):
        den = cf.C_const + cf.c_seq[k + 1] - v
        if vanishes(den, abs(cf.C_const) + abs(cf.c_seq[k + 1]) + abs(v)):
            raise PoleHit(k)
        v = cf.lambda_seq[k + 1] / den
    return v


def representation_residuals(spec: QuasiSpec, n: int, beta0=None):
    """Residuals of the product and the coefficient-sum representations of ``s_n``.

    (i)  ``s_n - beta0 prod_{k=2}^{n+1} lambda^q_k / prod_{k=1}^{n} lambda_k``, with
         ``lambda^q_2 = (s_1/beta0) lambda_1``; vanishes by telescoping.
    (ii) ``s_n - beta0 + [x^{n-1}] F_n - [x^{n-1}] F^Q_n``; equals ``-beta0``
         identically, since the coefficient difference is exactly ``s_n``.
    """
    beta0 = spec.shift.beta0 if beta0 is None else beta0
    if beta0 is None or vanishes(beta0):
        raise ValueError("beta0 must be supplied and nonzero")
    rr = restored_recurrence(spec)
    s = spec.shift
    lam_q = list(rr.lambda_q)
    lam_q[2] = s[1] / beta0 * spec.lt(1)
    num = 1
    for k in range(2, n + 2):
        num = num * lam_q[k]
    den = 1
    for k in range(1, n + 1):
        den = den * spec.lt(k)
    res1 = s[n] - beta0 * num / den
    base_n = eval_family(spec.base, n, X)
    quasi_n = eval_quasi(spec, n, X)
    res2 = s[n] - beta0 + base_n.coeff(n - 1) - quasi_n.coeff(n - 1)
    return res1, res2
