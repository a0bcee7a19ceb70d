"""Exception hierarchy shared by the parser, evaluators and search."""

from __future__ import annotations


class LogicError(Exception):
    """Base class for every error raised by lawlike."""


class FormulaSyntaxError(LogicError):
    def __init__(self, message: str, line: int, column: int, expected: frozenset[str] = frozenset()):
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        self.message = message
        detail = f"line {line}, column {column}: {message}"
        if self.expected:
            detail += " (expected one of: " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(detail)


class WellFormednessError(LogicError):
    def __init__(self, message: str, node=None):
        self.node = node
        super().__init__(message)


class UndeclaredAtom(WellFormednessError):
    pass


class ArityMismatch(WellFormednessError):
    pass


class EvaluationError(LogicError):
    pass


class UnsupportedConnective(EvaluationError):
    pass


class FreeVariable(EvaluationError):
    pass


class WorldNotInModel(EvaluationError):
    pass


class CapExceeded(LogicError):
    """An enumeration would exceed its configured size limit."""
