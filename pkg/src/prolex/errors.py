"""Exception types shared across the package.

Everything raised on bad *data* derives from :class:`ProlexError`, so callers
(and the CLI) can distinguish data problems from programming errors.
"""

from __future__ import annotations


class ProlexError(Exception):
    """Base class for all data-level errors raised by this package."""


class EmptyFormError(ProlexError):
    """A pronoun form is empty after normalization."""


class DuplicateIdError(ProlexError):
    """An explicitly requested pronoun-set id is already registered."""


class MalformedLineError(ProlexError):
    """A line in a data file does not match the expected column layout."""

    def __init__(self, message: str, *, source: str = "", line_no: int | None = None):
        prefix = ""
        if source:
            prefix = f"{source}:"
        if line_no is not None:
            prefix += f"{line_no}: "
        elif source:
            prefix += " "
        super().__init__(prefix + message)
        self.source = source
        self.line_no = line_no


class BadEncodingError(ProlexError):
    """Input bytes are not valid UTF-8."""


class UnbalancedBracketsError(ProlexError):
    """Coreference bracket opens/closes do not pair up."""


class InvalidSpanError(ProlexError):
    """A mention span is out of bounds, inverted, or duplicated."""


class MissingPosError(ProlexError):
    """A document lacks the POS column required for delexicalization."""


class UnresolvedPlaceholderError(ProlexError):
    """A placeholder token cannot be mapped back to a grammatical case."""


class EmptyProfileError(ProlexError):
    """A profile does not supply a usable pronoun set for relexicalization."""


class InvalidProfileError(ProlexError):
    """A profile fails validation for the requested operation."""

    def __init__(self, violations: list[str]):
        super().__init__("invalid profile: " + "; ".join(violations))
        self.violations = list(violations)


class DocumentMismatchError(ProlexError):
    """Two documents being compared are not over the same token sequence."""


class PlaceholderCollisionWarning(UserWarning):
    """Input text already contained a literal placeholder token."""
