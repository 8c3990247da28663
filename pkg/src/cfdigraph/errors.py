"""Exception and warning types shared across the package."""

from __future__ import annotations


class CfdigraphError(Exception):
    """Base class for every error raised by this package."""


class GrammarError(CfdigraphError):
    """A grammar source could not be parsed or normalized."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InputError(CfdigraphError):
    """A query (word, start symbol, bound) is outside the supported domain."""


class WalkError(CfdigraphError):
    """A sequence of arcs does not form a walk."""


class DiagramError(CfdigraphError):
    """A diagram document is malformed or fails validation."""

    def __init__(self, message: str, violations=()):
        self.violations = list(violations)
        super().__init__(message)


class AutomatonError(CfdigraphError):
    """An automaton breaks one of the numbered well-formedness conditions."""

    def __init__(self, item: int, message: str):
        self.item = item
        super().__init__(f"condition {item}: {message}")


class EpsilonWarning(UserWarning):
    """The source grammar derives the empty word; it was stripped."""
