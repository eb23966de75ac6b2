"""
Exception hierarchy for the domatic solver suite.

Every error carries an ``exit_code`` and a human readable ``detail`` so the
CLI can translate it without knowing where it came from.
"""

from typing import Optional


class DomaticError(Exception):
    """Base error. ``exit_code`` 2 is the CLI contract for usage/input errors."""

    exit_code: int = 2

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class ConfigError(DomaticError):
    pass


class UsageError(DomaticError):
    pass


class GraphParseError(DomaticError):
    """Syntax or semantic error in a graph file, with the 1-based line number."""

    def __init__(self, detail: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + detail)


class CnfParseError(GraphParseError):
    pass


class VertexRangeError(DomaticError):
    pass


class OracleLimitError(DomaticError):
    def __init__(self, n: int, limit: int, what: str):
        self.n = n
        self.limit = limit
        super().__init__(
            f"{what} oracle limit exceeded: n={n} > {limit}. "
            f"Use 'solve --exact' for larger graphs or raise --oracle-limit."
        )


class MalformedPartitionError(DomaticError):
    pass


class PartialAssignmentError(DomaticError):
    pass


class BudgetExceedsCapError(DomaticError):
    pass


class PipelineInvariantError(DomaticError):
    """Internal consistency breach (e.g. a SAT model that fails NAE evaluation)."""
