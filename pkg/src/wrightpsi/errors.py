"""Exception hierarchy.

Two families matter to callers: :class:`InvalidInput` (bad parameters or
arguments, CLI exit 2) and :class:`RegimeError` (valid input outside the
regime where a method applies, CLI exit 3).
"""


class WrightError(Exception):
    pass


class InvalidInput(WrightError, ValueError):
    pass


class RegimeError(WrightError):
    pass


# numkernel
class PoleError(InvalidInput):
    pass


# fps
class KindMismatch(InvalidInput, TypeError):
    pass


class NonzeroConstantTerm(InvalidInput):
    pass


class BadConstantTerm(InvalidInput):
    pass


class NotInvertible(InvalidInput):
    pass


# coeffs
class InvalidParams(InvalidInput):
    pass


class MatchFailure(WrightError, ArithmeticError):
    """The coefficient matching produced an inconsistent system (a bug)."""


class NotApplicable(InvalidInput):
    pass


class OrderTooHigh(InvalidInput):
    pass


class BranchError(WrightError, ArithmeticError):
    pass


class InsufficientCoeffs(InvalidInput):
    pass


# evaluate
class DivergentSeries(RegimeError):
    pass


class RadiusExceeded(RegimeError):
    pass


class AsymptoticRegimeTooSmall(RegimeError):
    pass


class NoMinimumFound(AsymptoticRegimeTooSmall):
    pass


class KappaOutOfRange(RegimeError):
    pass


class KappaNotOne(RegimeError):
    pass


class NotPolynomialCase(RegimeError):
    pass


# oracle
class ContourFailure(RegimeError):
    pass


class TruncationFailure(RegimeError):
    pass
