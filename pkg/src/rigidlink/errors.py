"""Exception types shared across the package."""


class RigidlinkError(Exception):
    """Base class for all errors raised by rigidlink."""


class ParseError(RigidlinkError, ValueError):
    """Malformed graph file. ``line`` is 1-based, or None for whole-document errors."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphError(RigidlinkError, ValueError):
    """Invalid vertex ids, edges or vertex sets."""


class PreconditionError(RigidlinkError, ValueError):
    """An operation was called on an input outside its domain."""

    def __init__(self, message, kind="precondition"):
        self.kind = kind
        super().__init__(message)
