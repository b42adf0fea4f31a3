"""Exception hierarchy shared by every module."""


class KoszulError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(KoszulError, ValueError):
    """Operands live over different variable lists or have incompatible shapes."""


class ParseError(KoszulError, ValueError):
    """Malformed polynomial or scene text.

    ``offset`` is the 0-based character position inside ``text``; ``field``
    names the scene field the text came from, when there is one.
    """

    def __init__(self, message, offset=None, text=None, field=None):
        self.reason = message
        self.offset = offset
        self.text = text
        self.field = field
        if field is not None:
            message = f"field {field}: {message}"
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class PreconditionError(KoszulError, ValueError):
    """An operation was called on input outside its domain."""


class LocalizationError(PreconditionError):
    """A fraction denominator lies in the prime at which we localize."""


class UnsupportedCaseError(KoszulError):
    """The input is mathematically valid but outside the handled construction.

    ``decomposition`` carries the computed cofactor data when available.
    """

    def __init__(self, message, decomposition=None):
        self.decomposition = decomposition
        super().__init__(message)


class GroebnerLimitError(KoszulError):
    """A Groebner basis computation exceeded the configured size limit."""


class OracleMismatchError(KoszulError):
    """The brute-force path disagreed with the closed form."""
