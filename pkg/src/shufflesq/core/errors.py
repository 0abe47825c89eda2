"""Exception hierarchy for shufflesq."""

from __future__ import annotations

from typing import Optional


class ShuffleError(Exception):
    """Base class for every error raised by the library."""


class ConfigError(ShuffleError):
    """Raised when configuration values are unusable."""


class WordParseError(ShuffleError):
    """Raised when a word cannot be parsed from text."""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class FamilyError(ShuffleError):
    """Raised for invalid word-family parameters."""


class TwinsError(ShuffleError):
    """Raised when twins violate an invariant or a rewiring precondition."""

    def __init__(self, message: str, index: Optional[int] = None) -> None:
        self.index = index
        super().__init__(message)


class GraphError(ShuffleError):
    """Raised when an ordered multigraph does not fit the requested operation."""


class CharacterizationError(ShuffleError):
    """Raised when a word does not satisfy the hypothesis of a closed form."""


class BudgetExceeded(ShuffleError):
    """Raised by search kernels once their node budget is spent."""

    def __init__(self, nodes: int, limit: int, message: Optional[str] = None) -> None:
        self.nodes = nodes
        self.limit = limit
        super().__init__(message or f"node budget of {limit} exhausted after {nodes} expansions")
