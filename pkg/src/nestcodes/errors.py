"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class NestCodesError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(NestCodesError, ValueError):
    pass


class NoIrreducibleFound(NestCodesError, RuntimeError):
    pass


class BudgetExceeded(NestCodesError):
    pass


class DivisionByZero(NestCodesError, ZeroDivisionError):
    pass


class NotInSubfield(NestCodesError, ValueError):
    pass


class NotADivisor(NestCodesError, ValueError):
    pass


class BadLength(NestCodesError, ValueError):
    pass


class MixedFields(NestCodesError, ValueError):
    pass


class ZeroScalar(NestCodesError, ValueError):
    pass


class ZeroSubspace(NestCodesError, ValueError):
    pass


class DuplicateOrbits(NestCodesError):
    """Two orbit representatives turned out to lie in the same orbit."""

    def __init__(self, message: str, pairs: list[tuple[int, int]] | None = None):
        super().__init__(message)
        self.pairs = pairs or []


class DomainViolation(NestCodesError, ValueError):
    pass


class NotInjective(NestCodesError, ValueError):
    pass


class DegreeMismatch(NestCodesError, ValueError):
    pass


class GuardViolation(NestCodesError, ValueError):
    """A parameter is outside the hypothesis of a construction or formula."""


class QTooSmall(GuardViolation):
    pass


class KTooSmall(GuardViolation):
    pass


class NotOddPrime(GuardViolation):
    pass


class PrimesNotDistinct(GuardViolation):
    pass


class BadParams(NestCodesError, ValueError):
    pass
