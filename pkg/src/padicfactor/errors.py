"""Exception hierarchy shared by every module of the package."""


class PadicFactorError(Exception):
    """Base class for all errors raised by :mod:`padicfactor`."""


class NonMonicDivisor(PadicFactorError):
    """Division by a polynomial whose leading coefficient is not 1."""


class ZeroDiscriminant(PadicFactorError):
    """The resultant of ``f`` and ``f'`` vanishes."""


class ReducibleModulus(PadicFactorError):
    """A tower extension was requested with a reducible modulus."""


class DivisionByZero(PadicFactorError, ZeroDivisionError):
    """Inversion of zero in a finite field."""


class EmptyInput(PadicFactorError, ValueError):
    """A hull or polynomial operation received no usable data."""


class PrecisionExhausted(PadicFactorError):
    """The working precision is too small to decide a valuation."""


class Infeasible(PadicFactorError):
    """A prescribed value cannot be realised below the required degree."""


class NotSeparable(PadicFactorError):
    """The input polynomial has a repeated factor."""


class NotARepresentative(PadicFactorError):
    """A polynomial does not single out exactly one factor."""


class NotAUnit(PadicFactorError):
    """An element expected to be a unit has positive value."""


class SquareFactor(PadicFactorError):
    """The residual factor divides the reduction more than once."""


class NonIntegralIndex(PadicFactorError):
    """The index formula produced a non-integer (inconsistent type data)."""


class BadParams(PadicFactorError, ValueError):
    """Family parameters violate a generator constraint."""


class NotMonic(PadicFactorError, ValueError):
    """The input polynomial is not monic."""


class BadPrime(PadicFactorError, ValueError):
    """The modulus supplied as a prime is not prime."""


class OutOfRange(PadicFactorError, ValueError):
    """An argument lies outside the supported domain."""
