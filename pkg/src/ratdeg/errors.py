"""Typed exceptions raised throughout ratdeg.

Every failure that can be triggered by user input derives from
:class:`RatdegError`, so front-ends can catch one base class and report a
stable error name.
"""


class RatdegError(Exception):
    """Base class for all domain errors."""

    @property
    def kind(self):
        return type(self).__name__


# field
class NotPrime(RatdegError):
    pass


class DegreeTooLarge(RatdegError):
    pass


class DivisionByZero(RatdegError, ZeroDivisionError):
    pass


class FieldTooLarge(RatdegError):
    pass


class NotIrreducible(RatdegError):
    pass


# poly / ideal
class RingMismatch(RatdegError):
    pass


class ArityMismatch(RatdegError):
    pass


class NotHomogeneous(RatdegError):
    pass


class ComputationBudgetExceeded(RatdegError):
    pass


class PositiveDimensional(RatdegError):
    pass


class NotZeroDimensional(RatdegError):
    pass


# zerodim
class ExtensionCapExceeded(RatdegError):
    pass


class NotAPoint(RatdegError):
    pass


class TruncationTooSmall(RatdegError):
    pass


# ratmap
class MixedDegrees(RatdegError):
    pass


class MixedArity(RatdegError):
    pass


class PositiveDimensionalBaseLocus(RatdegError):
    pass


class PositiveDimensionalFiber(RatdegError):
    pass


class NoValidSource(RatdegError):
    pass


# chainmod
class NotSurjective(RatdegError):
    pass


class NotGenerating(RatdegError):
    pass


class InvalidModuleData(RatdegError):
    pass


# versch
class CharacteristicTwo(RatdegError):
    pass


class VerificationFailed(RatdegError):
    pass


# shell
class ParseError(RatdegError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
