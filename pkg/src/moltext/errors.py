"""Exception hierarchy for the toolkit.

Parse errors carry the byte offset of the offending character so callers
can point at the exact spot in the input string.
"""

from __future__ import annotations


class MoltextError(Exception):
    """Base class for all toolkit errors."""


class SmilesParseError(MoltextError):
    """A SMILES string could not be parsed.

    Attributes:
        text: the full input string.
        offset: byte offset of the offending character (len(text) for
            end-of-input conditions such as unclosed rings).
    """

    def __init__(self, message: str, text: str = "", offset: int = 0) -> None:
        super().__init__(f"{message} (offset {offset})")
        self.text = text
        self.offset = offset


class EmptyInput(SmilesParseError):
    pass


class UnknownElement(SmilesParseError):
    pass


class UnclosedRing(SmilesParseError):
    pass


class UnbalancedParenthesis(SmilesParseError):
    pass


class ValenceViolation(SmilesParseError):
    pass


class MalformedLine(MoltextError):
    """A TSV input line did not have the expected shape."""


class MissingFile(MoltextError):
    """A required input file does not exist."""


class EmptyParent(MoltextError):
    """The parent dataset has no rows to split."""


class CohortTooLarge(MoltextError):
    """Requested cohort size exceeds the pool size."""


class MalformedRow(MoltextError):
    """A predictions row did not have exactly three tab-separated fields."""


class DuplicateId(MoltextError):
    """The same id appeared twice in a predictions file."""
