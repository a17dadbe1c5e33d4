"""Exception hierarchy shared by every module."""


class MultiComplexError(ValueError):
    """Base class for invalid input or violated preconditions."""


# structure / validation
class MissingSingleton(MultiComplexError):
    pass


class DuplicateSingleton(MultiComplexError):
    pass


class ContainmentViolation(MultiComplexError):
    pass


class CycleInOrder(MultiComplexError):
    pass


class SingletonRelationViolation(MultiComplexError):
    pass


class EmptyFace(MultiComplexError):
    pass


class VertexOutOfRange(MultiComplexError):
    pass


class OwnerMismatch(MultiComplexError):
    pass


class UnknownFace(MultiComplexError):
    pass


class DimensionTooHigh(MultiComplexError):
    pass


class NotAnEdge(MultiComplexError):
    pass


class NotDownClosed(MultiComplexError):
    pass


class SizeLimitExceeded(MultiComplexError):
    pass


class NotComparable(MultiComplexError):
    pass


# encoders
class DuplicateEdge(MultiComplexError):
    pass


class LoopNotAllowed(MultiComplexError):
    pass


class EmptyEdge(MultiComplexError):
    pass


class NotDownwardClosed(MultiComplexError):
    pass


class MalformedIncidence(MultiComplexError):
    pass


class NegativeColor(MultiComplexError):
    pass


class ParseError(MultiComplexError):
    """Malformed text or JSON input."""


class CrossCheckMismatch(RuntimeError):
    """Two independent computations of the same quantity disagreed.

    This is an internal error, never a user-input problem.
    """
