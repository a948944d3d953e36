"""Real zeros of recurrence-defined polynomials and interlacing diagnostics.

The zeros of ``P_n + beta P_{n-1}`` are the eigenvalues of the n x n Jacobi
matrix with its last diagonal entry lowered by ``beta``. When every
``lambda_k`` is positive that matrix is symmetrizable, and the eigenvalues
come from the implicit-shift QL iteration below. Otherwise the polynomial is
expanded in the monomial basis and handed to the companion-matrix path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegreeZero, SizeMismatch
from .ops import RecurrencePair, eval_all
from .poly import Poly, X

ZERO_TOL = 1e-12
SUPPORT_GUARD = 1e-12


@dataclass(frozen=True)
class ZeroSet:
    zeros: tuple
    n: int
    method: str
    tol: float
    complex_count: int = 0

    def __len__(self):
        return len(self.zeros)

    def __iter__(self):
        return iter(self.zeros)


def tridiag_eigenvalues(diag: Sequence[float], off: Sequence[float], max_iter: int = 60) -> list:
    """Eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL.

    ``off[i]`` couples rows ``i`` and ``i + 1``. Returns them ascending.
    """
    d = [float(v) for v in diag]
    n = len(d)
    e = [float(v) for v in off] + [0.0]
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= 1e-16 * dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > max_iter:
                raise ArithmeticError("QL iteration did not converge")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return sorted(d)


def _scale(p: Poly, z):
    return sum(abs(float(c)) * abs(z) ** k for k, c in enumerate(p.coeffs))


def _newton(p: Poly, z: float, steps: int = 3) -> float:
    dp = Poly([k * c for k, c in enumerate(p.coeffs)][1:] or [0])
    for _ in range(steps):
        d = float(dp(z))
        if d == 0:
            break
        step = float(p(z)) / d
        if not math.isfinite(step) or abs(step) > 1e-6 * (1 + abs(z)):
            break
        z -= step
    return z


def _bisect_sign_changes(p: Poly, lo: float, hi: float, grid: int = 4000) -> list:
    xs = np.linspace(lo, hi, grid)
    vals = [float(p(float(x))) for x in xs]
    out = []
    for i in range(grid - 1):
        a, b, fa, fb = float(xs[i]), float(xs[i + 1]), vals[i], vals[i + 1]
        if fa == 0:
            out.append(a)
            continue
        if fa * fb < 0:
            for _ in range(200):
                mid = 0.5 * (a + b)
                fm = float(p(mid))
                if fa * fm <= 0:
                    b = mid
                else:
                    a, fa = mid, fm
                if b - a <= 1e-15 * (1 + abs(a)):
                    break
            out.append(0.5 * (a + b))
    return out


def zeros_monomial(p: Poly) -> ZeroSet:
    """Real zeros of a monomial-basis polynomial via companion eigenvalues.

    ``numpy.roots`` builds and balances the companion matrix. Real zeros
    are polished by Newton steps. If the count of real roots disagrees with a
    sign-change scan, the bisection result is used instead.
    """
    pf = p.to_float() if not all(isinstance(c, float) for c in p.coeffs) else p
    if pf.degree < 1:
        raise DegreeZero("polynomial has no zeros to locate")
    roots = np.roots(list(reversed(pf.coeffs)))
    real, n_complex = [], 0
    for r in roots:
        if abs(r.imag) <= 1e-8 * (1 + abs(r.real)):
            real.append(_newton(pf, float(r.real)))
        else:
            n_complex += 1
    real.sort()
    method = "companion"
    if n_complex == 0 and len(real) > 1 and min(np.diff(real)) <= 1e-9 * (1 + max(map(abs, real))):
        bound = 1 + max(abs(float(c) / float(pf.leading)) for c in pf.coeffs[:-1])
        alt = _bisect_sign_changes(pf, -bound, bound)
        if len(alt) == pf.degree:
            real, method = alt, "bisection"
    return ZeroSet(tuple(real), pf.degree, method, ZERO_TOL, n_complex)


def zeros_linear_combo(rec: RecurrencePair, n: int, beta) -> ZeroSet:
    """Zeros of ``P_n + beta P_{n-1}`` from the diagonal-modified Jacobi matrix."""
    rec.check_degree(n)
    if n < 1:
        raise DegreeZero("degree 0 has no zeros")
    lam = [float(rec.lam[k]) for k in range(2, n + 1)]
    if all(v > 0 for v in lam):
        diag = [float(rec.c[k]) for k in range(1, n + 1)]
        diag[-1] -= float(beta)
        zs = tridiag_eigenvalues(diag, [math.sqrt(v) for v in lam])
        return ZeroSet(tuple(zs), n, "sym_tridiag", ZERO_TOL)
    p = eval_all(rec, n, X)
    poly = p[n] + beta * p[n - 1]
    return zeros_monomial(poly)


def interlace(za: ZeroSet, zb: ZeroSet) -> bool:
    """Strict interlacing of two real zero sets.

    With ``|zb| = |za| + 1`` this is ``zb_1 < za_1 < zb_2 < ... < za_k < zb_{k+1}``.
    With equal sizes (two families of the same degree) it is
    ``za_1 < zb_1 < za_2 < ... < za_k < zb_k``.
    """
    a, b = list(za), list(zb)
    if len(b) == len(a) + 1:
        return all(b[i] < a[i] < b[i + 1] for i in range(len(a)))
    if len(b) == len(a) and a:
        return all(a[i] < b[i] for i in range(len(a))) and all(b[i] < a[i + 1] for i in range(len(a) - 1))
    raise SizeMismatch(f"expected {len(a)} or {len(a) + 1} zeros in the second set, got {len(b)}")


def count_outside(zs: ZeroSet, support_lo, support_hi=math.inf) -> int:
    lo, hi = float(support_lo), float(support_hi)
    if not lo < hi:
        raise ValueError("support_lo must be below support_hi")
    glo = SUPPORT_GUARD * (1 + abs(lo))
    ghi = SUPPORT_GUARD * (1 + abs(hi)) if math.isfinite(hi) else 0.0
    return sum(1 for z in zs if z < lo - glo or z > hi + ghi)
