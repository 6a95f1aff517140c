"""Exception hierarchy shared by the library and the CLI exit-code mapping."""

from __future__ import annotations


class NonlocalityError(Exception):
    pass


class InvalidInputError(NonlocalityError, ValueError):
    """A value violates a documented invariant (CLI exit code 2)."""


class EnumerationCapError(InvalidInputError):
    def __init__(self, size: int, cap: int, what: str = "deterministic strategies") -> None:
        super().__init__(f"Enumeration of {size:,} {what} exceeds the cap of {cap:,}")
        self.size = size
        self.cap = cap


class DocumentParseError(NonlocalityError):
    """Input document is not well-formed (CLI exit code 3)."""

    def __init__(self, message: str, *, line: int | None = None, field: str | None = None) -> None:
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(f"field {field!r}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.line = line
        self.field = field
