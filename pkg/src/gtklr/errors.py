"""Exception hierarchy shared by the library and the command line."""


class GTKError(Exception):
    """Base class for every error raised by gtklr."""


class DomainError(GTKError, ValueError):
    """An input is outside the domain of the operation (bad letter, not red-good, ...)."""


class UnsupportedRankError(DomainError):
    pass


class InexactDivisionError(DomainError, ArithmeticError):
    pass


class StructuralError(GTKError, RuntimeError):
    """An internal consistency check failed; this indicates a bug, not bad input."""


class ResourceError(GTKError):
    """A configured budget (strand limit, class-size cap, retry cap) was exceeded."""
