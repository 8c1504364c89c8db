"""Exception hierarchy shared by every module.

The CLI reports the class name of whatever it catches, so names here are
part of the user-visible surface.
"""


class EctorusError(Exception):
    """Base class for all library errors."""


class DomainError(EctorusError, ValueError):
    """Input lies outside the mathematical domain of an operation."""


class IncompatibleFieldError(DomainError):
    """Operands live in different quadratic fields."""


class DegenerateError(DomainError):
    """Input is a degenerate case (rational rotation, singular curve, ...)."""


class SingularCurveError(DegenerateError):
    pass


class PoleError(DomainError):
    def __init__(self, message, nearest=None):
        super().__init__(message)
        self.nearest = nearest


class InvalidSklyaninParameters(DomainError):
    pass


class NotInDomainError(DomainError):
    """A partial map (such as the CM-to-RM functor) is undefined here."""


class RefusalError(DomainError):
    """Inexact input where an exact answer is required."""


class OutOfScopeError(DomainError):
    """Hypotheses of a theorem are not met; no extrapolation is attempted."""


class ContractError(EctorusError, ValueError):
    """A precondition on an argument (e.g. point on curve) was violated."""


class ParameterError(EctorusError, ValueError):
    pass


class ResourceError(EctorusError, RuntimeError):
    pass


class ParseError(EctorusError, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.position = position


class UnknownSymbolError(ParseError):
    pass
