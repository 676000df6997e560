"""Exception types shared across the package."""


class BrauerError(Exception):
    """Base class for all errors raised by this package."""


class ResourceBoundError(BrauerError):
    """A desk-scale resource bound (group order, subgroup count) was exceeded.

    Raised instead of ever returning a truncated enumeration.
    """


class ShapeError(BrauerError):
    """A group does not have the structural shape required by an operation."""


class InternalCheckError(BrauerError):
    """An internal consistency check failed (a theorem was violated => bug)."""
