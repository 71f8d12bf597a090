"""
Exception hierarchy shared by every layer of the engine.

Each exception carries an ``ErrorCode`` so the CLI can turn it into an exit
status and an ``ErrorResponse`` document without inspecting types.
"""
from typing import Any, Dict, Optional

from polar_roadmap.common.schemas.errors import (
    EXIT_CODES,
    ErrorCode,
    ErrorDetail,
    ErrorResponse,
)


class RoadmapError(Exception):
    """Base class for all engine errors."""
    code: ErrorCode = ErrorCode.INTERNAL_ERROR

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.code]

    def to_response(self) -> ErrorResponse:
        """
        Convert the exception to the error document written by the CLI.
        """
        return ErrorResponse(
            message=self.message,
            code=self.code,
            exit_code=self.exit_code,
            details=[
                ErrorDetail(field=key, message=str(value), code=self.code)
                for key, value in sorted(self.details.items())
            ],
        )


class InvalidInputError(RoadmapError, ValueError):
    code = ErrorCode.INVALID_INPUT


class ParseError(InvalidInputError):
    code = ErrorCode.PARSE_ERROR

    def __init__(self, message: str, line: int, column: int, **details: Any):
        super().__init__(f"{message} at line {line}, column {column}", line=line, column=column, **details)
        self.line = line
        self.column = column


class UndeclaredVariableError(ParseError):
    pass


class ExponentOverflowError(ParseError):
    pass


class RingMismatchError(InvalidInputError):
    pass


class DimensionMismatchError(InvalidInputError):
    pass


class JobFileError(InvalidInputError):
    code = ErrorCode.JOB_FILE_ERROR

    def __init__(self, message: str, line: Optional[int] = None, **details: Any):
        if line is not None:
            message = f"{message} (line {line})"
            details["line"] = line
        super().__init__(message, **details)


class ConfigurationError(InvalidInputError):
    code = ErrorCode.CONFIGURATION_ERROR


class NotZeroDimensionalError(RoadmapError):
    code = ErrorCode.NOT_ZERO_DIMENSIONAL

    def __init__(self, message: str, dimension: Optional[int] = None, **details: Any):
        super().__init__(message, dimension=dimension, **details)
        self.dimension = dimension


class PositiveDimensionalUnsupportedError(NotZeroDimensionalError):
    code = ErrorCode.POSITIVE_DIMENSIONAL_UNSUPPORTED


class UnsupportedShapeError(RoadmapError):
    code = ErrorCode.UNSUPPORTED_SHAPE


class ResourceLimitError(RoadmapError):
    """Raised when a configured budget is exhausted. Never a mathematical verdict."""
    code = ErrorCode.RESOURCE_LIMIT

    def __init__(self, message: str, budget: str, limit: int, reached: int):
        super().__init__(message, budget=budget, limit=limit, reached=reached)
        self.budget = budget
        self.limit = limit
        self.reached = reached


class AssumptionViolatedError(RoadmapError):
    code = ErrorCode.ASSUMPTION_VIOLATED

    def __init__(self, assumption: str, witness: str):
        super().__init__(f"assumption {assumption} is violated: {witness}", assumption=assumption, witness=witness)
        self.assumption = assumption
        self.witness = witness


class DegenerateDrawError(RoadmapError):
    """A random draw produced a degenerate configuration; the caller re-draws."""
    code = ErrorCode.DEGENERATE_DRAW
