"""Exception hierarchy shared by every lexsat module."""

from __future__ import annotations


class LexsatError(Exception):
    """Base class for all errors raised by lexsat."""


class ContractViolation(LexsatError, ValueError):
    """An argument broke an operation's documented precondition (lengths, membership)."""


class PreconditionError(LexsatError, ValueError):
    """A relation or relation set lacks the closure property an operation needs."""


class ResourceLimitError(LexsatError):
    """An enumeration bound or search step cap would be exceeded."""


class DispatchError(LexsatError):
    """No polynomial method applies and the exponential fallback was forbidden."""


class ReductionError(LexsatError):
    """A reduction could not be carried out within its gadget budget."""


class ParseError(LexsatError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message
