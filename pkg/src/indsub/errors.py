"""Exception types shared across the package."""


class GraphError(ValueError):
    """Invalid graph construction or argument (bad edge, bad vertex, bad mask)."""


class GraphFormatError(ValueError):
    """Malformed graph file. Carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CapExceededError(ValueError):
    """A configured size cap would be exceeded."""


class InvariantError(AssertionError):
    """An internal invariant was violated. Indicates a bug, never bad input."""
