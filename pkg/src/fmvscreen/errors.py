"""Exception types shared across the package."""


class InputError(ValueError):
    """Raised when an input violates a precondition (shape, finiteness, range)."""


class DegenerateSlicesError(ValueError):
    """Raised when a response admits no partition with at least two nonempty slices."""
