"""Exception hierarchy shared by all modules."""


class AGCError(Exception):
    """Base class for errors raised by this package."""


class NotPrime(AGCError, ValueError):
    pass


class FieldTooSmall(AGCError, ValueError):
    """GF(2) is excluded; every construction assumes q >= 3."""


class FieldMismatch(AGCError, ValueError):
    pass


class DivisionByZero(AGCError, ZeroDivisionError):
    pass


class NotSquare(AGCError, ValueError):
    pass


class NotInvertible(AGCError, ValueError):
    pass


class BadShape(AGCError, ValueError):
    pass


class BadIndex(AGCError, ValueError):
    pass


class IndexOutOfRange(AGCError, IndexError):
    pass


class LengthMismatch(AGCError, ValueError):
    pass


class TooLarge(AGCError, ValueError):
    """A desk-scale guard was exceeded."""


class RankMismatch(AGCError, ValueError):
    pass


class DegenerateRestriction(AGCError, RuntimeError):
    """Evaluation matrix on a check's support set did not have rank 2^r."""


class AnchorMissing(AGCError, RuntimeError):
    """A local check vanished at the zero matrix."""


class OverlapDetected(AGCError, RuntimeError):
    """Two checks share a support point other than the anchor."""
