"""Exception hierarchy shared by every module of the package."""


class AlgebraError(Exception):
    """Base class for all errors raised by dqhopf."""


class FieldMismatch(AlgebraError, ValueError):
    pass


class DivisionByZero(AlgebraError, ZeroDivisionError):
    pass


class Singular(AlgebraError, ValueError):
    pass


class ArityMismatch(AlgebraError, ValueError):
    pass


class CostExceeded(AlgebraError, RuntimeError):
    pass


class ParseError(AlgebraError, ValueError):
    """Malformed text input; carries a 1-based line and column."""

    def __init__(self, message, line=1, column=1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class DimensionMismatch(ParseError):
    pass


class UnknownBasisLabel(ParseError):
    pass


class SubscriptGap(ParseError):
    pass


class DuplicateSubscript(ParseError):
    pass


class MixedResultKind(ParseError):
    pass


class AmbiguousProduct(ParseError):
    pass


class UnboundName(AlgebraError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unbound name"


class MissingAntipodeData(AlgebraError, ValueError):
    pass


class MissingLeftInverse(AlgebraError, ValueError):
    pass


class NotInvertible(AlgebraError, ValueError):
    pass


class NotProportional(AlgebraError, ValueError):
    pass


class NotGrouplike(AlgebraError, ValueError):
    pass


class UnsupportedCharacteristic(AlgebraError, ValueError):
    pass


class UnknownTarget(AlgebraError, ValueError):
    pass


class ChecksFailed(AlgebraError):
    """A builder refused to emit an instance; ``report`` holds the failures."""

    def __init__(self, message, report):
        self.report = report
        super().__init__(message)
