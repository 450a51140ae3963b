"""Exception hierarchy.

Every domain failure derives from :class:`DetliftError`; the CLI maps those to
exit status 1.  :class:`ParseError` is the only input-syntax failure (exit 2).
"""


class DetliftError(Exception):
    """Base class for all library errors."""

    kind = "DetliftError"

    def __init__(self, message: str = ""):
        super().__init__(message)
        self.kind = type(self).__name__


class InvalidDescriptor(DetliftError):
    pass


class MixedRings(DetliftError):
    pass


class UnsupportedRing(DetliftError):
    pass


class InfiniteRing(DetliftError):
    pass


class NotUnimodular(DetliftError):
    pass


class NotInvertible(DetliftError):
    pass


class NotDivisible(DetliftError):
    pass


class NonzeroDeterminant(DetliftError):
    pass


class WitnessInvalid(DetliftError):
    pass


class PreconditionFailed(DetliftError):
    pass


class BudgetExceeded(DetliftError):
    pass


class ShapeMismatch(DetliftError):
    pass


class LiteralOutOfRing(DetliftError):
    pass


class ParseError(DetliftError):
    """Malformed input string; ``offset`` is the index of the offending character."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
