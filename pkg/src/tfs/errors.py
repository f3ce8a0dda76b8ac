"""Exception hierarchy shared by all tfs modules."""

from __future__ import annotations


class TfsError(Exception):
    """Base class for every error raised by the library."""


class ParseError(TfsError):
    """A file did not conform to its line grammar."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class UnknownSymbolError(TfsError, KeyError):
    """A type, attribute, state or object id is not declared."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class SignatureError(TfsError):
    """A signature violates one of its defining conditions."""


class MonotonicityError(SignatureError):
    """Appropriateness is not monotone along subsumption.

    ``general`` subsumes ``specific`` and ``approp(general, attr)`` is defined,
    but ``approp(specific, attr)`` is undefined or not subsumed by it.
    """

    def __init__(self, general: str, specific: str, attr: str, detail: str):
        self.general = general
        self.specific = specific
        self.attr = attr
        super().__init__(
            f"appropriateness monotonicity violated at ({general}, {specific}, {attr}): {detail}"
        )


class StructureError(TfsError):
    """A machine (feature structure, morph) is malformed."""


class InterpretationError(TfsError):
    """A finite interpretation violates the interpretation conditions."""

    def __init__(self, message: str, obj: str | None = None, attr: str | None = None):
        self.obj = obj
        self.attr = attr
        super().__init__(message)


class SizeGuardError(TfsError):
    """Naive enumeration would exceed the configured candidate bound."""
