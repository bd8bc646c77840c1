"""Exception types raised across the package."""


class CasError(Exception):
    """Base class for all library errors."""


class ZeroDenominator(CasError, ZeroDivisionError):
    pass


class InexactDivision(CasError, ArithmeticError):
    pass


class ParseError(CasError, ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownIdentifier(ParseError):
    pass


class SubstitutionError(CasError, ValueError):
    pass


class NotDependent(CasError, ValueError):
    pass


class NotQuadratic(CasError, ValueError):
    pass


class SeriesError(CasError, ValueError):
    pass


class NotInvertible(SeriesError):
    pass


class NonzeroConstantPullback(SeriesError):
    pass


class IrrationalConstant(SeriesError):
    pass


class InvalidParameter(SeriesError):
    pass


class NotExpandable(CasError, ValueError):
    pass


class TooExpensive(CasError, ValueError):
    pass


class InvalidMonomialMap(CasError, ValueError):
    pass


class DiscriminantDegreeTooHigh(CasError, ValueError):
    pass


class DegenerateCurve(CasError, ValueError):
    pass


class HauptmodulInfinite(CasError, ValueError):
    """Raised when j = 0, so 1728/j is infinite."""


class InsufficientTerms(CasError, ValueError):
    pass


class WrongOrder(CasError, ValueError):
    pass


class SeriesTooShort(CasError, ValueError):
    pass


class UnknownCase(CasError, KeyError):
    def __str__(self):
        # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""
