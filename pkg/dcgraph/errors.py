"""Exception hierarchy shared by every dcgraph module."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from dcgraph.core import ColoredGraph


class DcgError(Exception):
    """Base class for all dcgraph errors."""


class StructureError(DcgError, ValueError):
    """A graph candidate is not a complete, loop-free edge coloring."""


class PreconditionError(DcgError, ValueError):
    """An operation was called with arguments outside its contract."""


class InconsistencyError(DcgError, RuntimeError):
    """An internal assertion failed.

    Raised when a min-rule ambiguity is detected, when realize meets a block
    that does not split in two, or when a constructed extension fails
    validation. On valid input none of these can happen.
    """

    def __init__(self, message: str, detail: dict[str, Any] | None = None) -> None:
        """Initialize the error with an optional dictionary of diagnostic details."""
        super().__init__(message)
        self.detail = detail or {}


class StrategyError(DcgError, RuntimeError):
    """A selector strategy broke its contract or produced no good trace."""


class BudgetExhaustedError(DcgError, RuntimeError):
    """The generic builder ran out of repair rounds.

    Attributes:
        graph: The partial structure reached when the budget ran out.
        deficit: The number of unrealized extension types left.

    """

    def __init__(self, message: str, graph: ColoredGraph, deficit: int) -> None:
        """Initialize the error with the partial structure and its remaining deficit."""
        super().__init__(message)
        self.graph = graph
        self.deficit = deficit


class BoundExceededError(DcgError, ValueError):
    """An exhaustive enumeration was asked for more than the guard allows."""


class FormatError(DcgError, ValueError):
    """A text document could not be parsed."""

    def __init__(self, message: str, line_no: int | None = None) -> None:
        """Initialize the error, remembering the 1-based line number if known."""
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}" if line_no is not None else message)


class ConfigError(DcgError, ValueError):
    """The settings file is missing keys, has unknown keys or wrong types."""
