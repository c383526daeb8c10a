"""Exception hierarchy shared by every module."""


class DyndegError(Exception):
    """Base class for all errors raised by this package."""


class DimensionTooLarge(DyndegError, ValueError):
    pass


class NoConvergence(DyndegError, ArithmeticError):
    pass


class FieldMismatch(DyndegError, TypeError):
    pass


class ShapeMismatch(DyndegError, ValueError):
    pass


class NotSquare(ShapeMismatch):
    pass


class InvalidParameters(DyndegError, ValueError):
    """A factor violates one of its structural invariants.

    ``invariant`` names the violated rule so callers can report it.
    """

    def __init__(self, invariant, message):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


class IndexOutOfRange(DyndegError, IndexError):
    pass


class RestrictionNotInvariant(DyndegError, ArithmeticError):
    pass


class SingularBasis(DyndegError, ArithmeticError):
    pass


class ConfigInvalid(DyndegError, ValueError):
    pass


class SchemaError(DyndegError, ValueError):
    """Instance document does not match the schema.

    ``path`` is a JSON pointer to the offending location.
    """

    def __init__(self, path, message):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path


class VersionError(SchemaError):
    pass
