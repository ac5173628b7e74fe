"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Shapes or subsystem dimensions are incompatible."""


class InvalidStateError(ValueError):
    """A matrix or vector fails the invariants of the requested state type."""


class NumericalError(ArithmeticError):
    """An iterative routine failed to converge."""
