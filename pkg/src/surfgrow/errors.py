"""Exception hierarchy shared by every layer of the package.

The split mirrors the CLI exit codes: parse problems, verification
failures, and configuration mistakes are reported separately so that
callers can react to each without string matching.
"""

from __future__ import annotations


class SurfgrowError(Exception):
    """Base class for all package errors."""


class ParseError(SurfgrowError):
    """Raised when circuit text cannot be parsed.

    Attributes:
        offset: Character offset into the cleaned text where the
            offending statement starts, or None when unavailable.
        statement: The statement text that failed, or None.
    """

    def __init__(self, message: str, offset: int | None = None, statement: str | None = None):
        self.offset = offset
        self.statement = statement
        if offset is not None:
            message = f"{message} (at offset {offset}: {statement!r})"
        super().__init__(message)


class ValidationError(SurfgrowError):
    """Raised when a structural invariant fails (bad stabilizer set,
    ill-formed circuit, unsupported grid placement)."""


class NonUnitarityError(ValidationError):
    """Raised when a reset targets a qubit that already supports a
    tracked operator, which would destroy tracked information."""


class SynthesisError(SurfgrowError):
    """Raised when pattern extraction from canonical instances fails.

    Attributes:
        side: Name of the boundary side being matched, or None.
        position: Index of the first mismatching tile, or None.
    """

    def __init__(self, message: str, side: str | None = None, position: int | None = None):
        self.side = side
        self.position = position
        if side is not None:
            message = f"{message} (side={side}, position={position})"
        super().__init__(message)


class VerificationError(SurfgrowError):
    """Raised when a circuit fails certification and the caller asked
    for errors rather than a failing certificate."""


class ConfigError(SurfgrowError):
    """Raised for invalid request parameters (bad distance, bad range,
    out-of-scope options)."""
