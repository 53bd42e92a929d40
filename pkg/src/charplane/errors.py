"""Exception types shared across the package.

Every error raised on bad input or a failed hypothesis derives from
CharplaneError, so callers can catch one base class.  Errors that carry
partial results (HypothesisFailed) expose them as attributes instead of
burying them in the message.
"""


class CharplaneError(Exception):
    """Base class for all package errors."""


class InvalidCharacteristic(CharplaneError):
    """Characteristic is not 0 and not a prime."""


class UnsupportedExtension(CharplaneError):
    """Extension degree not supported for this characteristic."""


class ZeroInput(CharplaneError):
    """An operation received the zero polynomial where nonzero is required."""


class ParseError(CharplaneError):
    """Expression text is not in the accepted grammar.

    Carries the 0-based offset of the offending character in `position`.
    """

    def __init__(self, message, position=None):
        super().__init__(message if position is None
                         else f"{message} (at offset {position})")
        self.position = position


class NotRegularParameter(CharplaneError):
    """The direction curve l must have order exactly 1."""


class DegenerateDirection(CharplaneError):
    """The direction curve l divides f, so the polar is degenerate."""


class NotInvertible(CharplaneError):
    """A linear substitution matrix has zero determinant."""


class InfiniteIntersection(CharplaneError):
    """Curves share a component through the origin where finiteness is required."""


class OracleFailure(CharplaneError):
    """The independent resultant oracle could not reach a generic position."""


class NotReduced(CharplaneError):
    """Input has a repeated factor through the origin."""


class DepthExceeded(CharplaneError):
    """Blowup recursion passed the safety depth bound."""


class NotIrreducible(CharplaneError):
    """An operation requiring a single branch received a multi-branch curve."""


class HypothesisFailed(CharplaneError):
    """A theorem's hypothesis does not hold for this input.

    `report` carries whatever partial numbers were computed before the
    hypothesis check, so callers can still inspect them.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotSupported(CharplaneError):
    """Exact arithmetic for this input falls outside the supported fragment."""
