"""Exception classes.  The CLI prints ``type(exc).__name__`` as the error class."""


class DesignError(Exception):
    """Base class for every error raised by this package."""


class DuplicatePoint(DesignError):
    pass


class OutOfRange(DesignError):
    pass


class BadPermutation(DesignError):
    pass


class BadWindow(DesignError):
    pass


class InvalidInput(DesignError):
    pass


class UnsupportedOrder(DesignError):
    pass


class OrderMismatch(DesignError):
    pass


class GroupMismatch(DesignError):
    pass


class MissingReport(DesignError):
    pass


class ValidationError(DesignError):
    pass


class ParseError(DesignError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class InvariantFailure(DesignError):
    """An internal consistency check failed (CLI exit code 3)."""
