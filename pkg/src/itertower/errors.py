"""Exception hierarchy.

Everything a caller can trigger by feeding inputs that violate an
operation's preconditions derives from :class:`HypothesisError`; the CLI
maps those to exit status 2.  :class:`InternalError` marks a broken
invariant inside the library itself (exit status 1).
"""


class TowerError(Exception):
    """Base class for all errors raised by itertower."""


class HypothesisError(TowerError):
    """An input does not satisfy the hypotheses of the requested operation."""


class InternalError(TowerError):
    """An internal consistency check failed."""


class DegreeGuardExceeded(HypothesisError):
    def __init__(self, degree, guard):
        super().__init__(f"degree {degree} exceeds the degree guard {guard}")
        self.degree = degree
        self.guard = guard


class DomainMismatch(HypothesisError):
    pass


class BothZero(HypothesisError):
    pass


class ConstantInput(HypothesisError):
    pass


class ResultantNotUnit(HypothesisError):
    pass


class ParseError(HypothesisError):
    def __init__(self, text, pos, message):
        caret = " " * pos + "^"
        super().__init__(f"{message} at position {pos}\n  {text}\n  {caret}")
        self.text = text
        self.pos = pos


class NotPrime(HypothesisError):
    pass


class BadReduction(HypothesisError):
    def __init__(self, p):
        super().__init__(f"a coefficient denominator vanishes modulo {p}")
        self.p = p


class CoefficientsNotInPrimeField(HypothesisError):
    pass


class NonRationalCritical(HypothesisError):
    pass


class NonRationalBranch(HypothesisError):
    pass


class ZeroDerivative(HypothesisError):
    pass


class NotQuadratic(HypothesisError):
    pass


class Undecidable(HypothesisError):
    pass


class NotPcf(HypothesisError):
    pass


class PostCriticalT0(HypothesisError):
    pass


class ZeroDiscriminant(HypothesisError):
    def __init__(self, n):
        super().__init__(f"discriminant vanishes at level n={n}")
        self.n = n


class FactorizationIncomplete(HypothesisError):
    def __init__(self, n, partial=None):
        super().__init__(f"could not completely factor {n}")
        self.n = n
        self.partial = partial or {}


class HypothesisFailed(HypothesisError):
    """A named hypothesis of a theorem-backed report is not met."""

    def __init__(self, hypothesis, detail=""):
        msg = f"hypothesis failed: {hypothesis}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.hypothesis = hypothesis
        self.detail = detail


class NonIntegerCount(InternalError):
    pass
