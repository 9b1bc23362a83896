"""Exception types raised across the package."""


class MeritFactorError(ValueError):
    """Base class for invalid-argument errors in this package."""


class InvalidSequence(MeritFactorError):
    pass


class LengthTooSmall(MeritFactorError):
    pass


class LengthMismatch(MeritFactorError):
    pass


class BadSampleCount(MeritFactorError):
    pass


class NotOddPrime(MeritFactorError):
    pass


class NotPositiveOdd(MeritFactorError):
    pass


class NotOdd(MeritFactorError):
    pass


class NotSquarefree(MeritFactorError):
    pass


class NotADivisor(MeritFactorError):
    pass


class NotCoprime(MeritFactorError):
    pass


class NotPrimitive(MeritFactorError):
    pass


class NotPrimePower(MeritFactorError):
    pass


class NonpositiveT(MeritFactorError):
    pass


class EvenModulus(MeritFactorError):
    pass


class ParityMismatch(MeritFactorError):
    pass


class TooLarge(MeritFactorError):
    pass


class BadModulus(MeritFactorError):
    pass
