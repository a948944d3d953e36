"""Spectral transforms of orthogonal polynomials and order-one quasi-orthogonal families."""

from .errors import *  # noqa: F401,F403
from .laguerre import geronimus_laguerre, laguerre_pair, uvarov_laguerre
from .ops import RecurrencePair, eval_all, eval_numerator, monomial_coeffs
from .poly import Poly, X
from .quasi import QuasiSpec, ShiftSequence, eval_quasi, propagate_shift, restored_recurrence
from .roots import count_outside, interlace, zeros_linear_combo
from .transforms import christoffel, geronimus, uvarov

__version__ = "0.1.0"
