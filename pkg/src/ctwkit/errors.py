"""Exception types shared across the toolkit."""


class CtwError(Exception):
    """Base class for all toolkit errors."""


class InstanceError(CtwError):
    """An instance violates a structural invariant (bad job id, overlapping
    hard/soft constraint sets, b > k/2, ...)."""


class ParseError(CtwError):
    """A text input could not be parsed.

    Carries an optional 1-based line/column of the offending token.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class SchemaError(CtwError):
    """A structured document (JSON) does not match the expected schema.

    ``path`` locates the offending value, e.g. ``$.atomic[2][0]``.
    """

    def __init__(self, message: str, path: str = "$"):
        self.path = path
        super().__init__(f"{path}: {message}")
