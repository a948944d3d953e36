"""Dense univariate polynomials in the monomial basis.

Coefficients may be ``float`` or ``fractions.Fraction``; arithmetic never
converts between the two, so a polynomial built from rationals stays exact.
Calling a :class:`Poly` on another :class:`Poly` composes them, which is how
the recurrence evaluators double as symbolic expanders.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Number


def _trim(coeffs):
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        coeffs = [0]
    return tuple(coeffs)


class Poly:
    """Immutable polynomial, ``coeffs[k]`` multiplies ``x**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=(0,)):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, value):
        return cls((value,))

    @classmethod
    def x(cls, one=1):
        return cls((0 * one, one))

    @classmethod
    def from_roots(cls, roots, one=1):
        p = cls((one,))
        for r in roots:
            p = p * cls((-r, one))
        return p

    @property
    def degree(self):
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return -1
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def is_zero(self):
        return self.degree < 0

    def max_abs(self):
        return max(abs(c) for c in self.coeffs)

    def __call__(self, x):
        acc = self.coeffs[-1]
        if isinstance(x, Poly):
            acc = Poly.const(acc)
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, Number):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, Number):
            return Poly(c * other for c in self.coeffs)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = [0 * self.coeffs[0]] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if not isinstance(scalar, Number):
            return NotImplemented
        return Poly(c / scalar for c in self.coeffs)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def to_float(self):
        return Poly(float(c) for c in self.coeffs)

    def is_exact(self):
        return all(isinstance(c, (int, Fraction)) for c in self.coeffs)


X = Poly.x()


def is_symbolic(x):
    return isinstance(x, Poly)


def magnitude(v):
    """Size of a scalar or polynomial value, used for residual scaling."""
    if isinstance(v, Poly):
        return v.max_abs()
    return abs(v)
