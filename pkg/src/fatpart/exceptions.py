"""Exception hierarchy shared by all fatpart modules."""


class FatPartError(ValueError):
    """Base class for user-facing errors raised by fatpart."""


class MalformedDocument(FatPartError):
    pass


class EmptyTree(FatPartError):
    pass


class NonPositiveWeight(FatPartError):
    pass


class DegenerateCut(FatPartError):
    """A cut would produce a piece whose area cannot be represented."""


class PreconditionViolated(FatPartError):
    pass


class NotUltrametric(FatPartError):
    pass


class DimensionTooSmall(FatPartError):
    pass


class DuplicatePoints(FatPartError):
    """Two points were mapped to the same image (infinite contraction)."""


class InvariantViolation(RuntimeError):
    """An internal post-condition failed; indicates a bug, not bad input."""
