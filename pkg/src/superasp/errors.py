"""Exception types shared across the package."""


class ParseError(ValueError):
    """Raised on malformed program or QBF text."""

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"{line}:{column}: {message}")


class GuardExceeded(RuntimeError):
    """The atom universe is too large for exhaustive enumeration."""

    def __init__(self, size: int, limit: int, what: str = "enumeration"):
        self.size = size
        self.limit = limit
        super().__init__(
            f"{what} over {size} atoms exceeds the guard of {limit}; "
            "raise max_atoms explicitly to accept exponential runtime"
        )


class UniverseMismatch(ValueError):
    pass


class InvariantViolation(ValueError):
    pass


class ConstraintPresent(ValueError):
    pass


class NotNormal(ValueError):
    pass


class UnknownAtom(KeyError):
    pass
