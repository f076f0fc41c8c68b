"""Exception hierarchy shared by all modules."""


class MTLError(Exception):
    """Base class for every error raised by this package."""


class ParseError(MTLError):
    """A signal file could not be parsed."""


class DomainError(MTLError):
    """A signal violates its domain invariants."""


class DomainMismatch(MTLError):
    """Two signals with different time domains were combined."""


class OutOfDomain(MTLError):
    """A time point outside the signal domain was queried."""


class FormulaSyntaxError(MTLError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class IntervalError(MTLError):
    """A temporal interval has lower bound above upper bound."""


class UnsupportedNegation(MTLError):
    """Negation over Until/Since has no dual in the grammar."""


class NotPNF(MTLError):
    """The quantitative evaluators only accept positive normal form."""


class OpenIntervalUnsupported(MTLError):
    pass


class UnknownProposition(MTLError):
    pass


class KernelShapeError(MTLError):
    """A smooth kernel was requested where only rect/singular are legal."""


class InvalidParam(MTLError):
    pass


class NonBooleanOperand(MTLError):
    """Continuous quantitative Until/Since needs a {0,1}-valued left operand."""
