"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """A scalar argument is outside its documented domain."""


class StructuralError(ValueError):
    """A composite argument violates a structural precondition,
    e.g. a node set that is not an antichain or not an upper set."""
