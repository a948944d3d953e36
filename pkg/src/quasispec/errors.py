"""Exception hierarchy for quasispec."""


class OPSError(ValueError):
    """Base class for all numerical-contract failures."""


class DegreeOutOfRange(OPSError):
    pass


class ZeroAtNode(OPSError):
    """P_n(a) vanishes, so the Christoffel transform at ``a`` is undefined."""

    def __init__(self, n, value=None):
        self.n = n
        self.value = value
        super().__init__(f"P_{n}(a) = 0; transform undefined at index {n}")


class QuasiDefFail(OPSError):
    """The transformed functional is not quasi-definite."""

    def __init__(self, n, reason=""):
        self.n = n
        super().__init__(f"quasi-definiteness fails at index {n}" + (f": {reason}" if reason else ""))


class DivideByZeroShift(OPSError):
    def __init__(self, n):
        self.n = n
        super().__init__(f"shift value at index {n} is zero")


class ZeroShiftEncountered(OPSError):
    def __init__(self, n):
        self.n = n
        super().__init__(f"propagated shift vanished at index {n}")


class ConditionViolated(OPSError):
    def __init__(self, n, residual):
        self.n = n
        self.residual = residual
        super().__init__(f"restriction condition violated at n={n} (residual {residual})")


class PoleHit(OPSError):
    def __init__(self, k):
        self.k = k
        super().__init__(f"continued fraction denominator vanished at k={k}")


class PartnerDegenerate(OPSError):
    pass


class NoVariantValid(OPSError):
    def __init__(self, residuals):
        self.residuals = dict(residuals)
        super().__init__(f"no formula variant produced a vanishing residual: {self.residuals}")


class EvalAtMass(OPSError):
    """Evaluation requested at the mass point where an identity carries 1/(x - a)."""


class InvalidAlpha(OPSError):
    pass


class DegreeZero(OPSError):
    pass


class SizeMismatch(OPSError):
    pass
