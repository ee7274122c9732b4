"""Exception hierarchy shared by every module of the engine."""


class SkeinError(Exception):
    """Base class for all engine errors."""


class RingError(SkeinError):
    """Problems with ring elements or ring-valued matrices."""


class RingMismatch(RingError, TypeError):
    """Arithmetic was attempted between elements of different rings."""


class NotAUnit(RingError, ArithmeticError):
    """An element that must be invertible is not a unit of its ring."""


class ExponentOverflow(RingError, OverflowError):
    """A Laurent exponent left the guarded range."""


class NotInvertible(RingError):
    """A pairing matrix has a determinant that is not a unit."""


class DeltaMismatch(RingError):
    """The trace of the asymmetry differs from the requested loop value."""

    def __init__(self, trace, expected):
        self.trace = trace
        self.expected = expected
        super().__init__(f"trace(B^-1 B^T) = {trace} but delta = {expected}")


class UnsupportedRing(RingError):
    """The operation is not available over the ring of the given values."""


class InvalidBlock(SkeinError, ValueError):
    """A canonical block violates its side conditions."""


class ArityMismatch(SkeinError, ValueError):
    """Two morphisms were glued along objects of different sizes."""

    def __init__(self, left, right, what="compose"):
        self.left = left
        self.right = right
        super().__init__(f"cannot {what}: arity {left} does not match arity {right}")


class NotALink(SkeinError, ValueError):
    """A bracket was requested for a tangle with free ends."""


class TooManyCrossings(SkeinError, ValueError):
    """The brute-force state sum refuses diagrams above its crossing cap."""


class DSLSyntaxError(SkeinError, SyntaxError):
    """Malformed tangle expression text."""

    def __init__(self, message, text, pos):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line = line
        self.column = col
        super().__init__(f"{message} at line {line}, column {col}")


ArityError = ArityMismatch
