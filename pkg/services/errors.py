"""
Error Types
Exceptions raised by the services layer. The command layer maps them to exit codes.
"""


class BizonError(ValueError):
    """Base class for every error raised by the bizon services."""

    exit_code = 1


class GraphParseError(BizonError):
    """A graph file or family spec could not be parsed."""

    exit_code = 2


class InvalidGraphError(BizonError):
    """A graph operation was called with arguments outside its domain."""

    exit_code = 2


class RParameterError(BizonError):
    """r is below -delta_G for the graph at hand."""

    exit_code = 3


class BudgetExceededError(BizonError):
    """An exhaustive computation would exceed its configured budget."""

    exit_code = 4


class CrossCheckError(BizonError):
    """Two independent methods disagreed on the same input."""

    exit_code = 1
