from datetime import datetime, timezone
from enum import Enum
from typing import Any, Dict, List, Optional
import uuid

from pydantic import BaseModel, Field


class ErrorCode(str, Enum):
    INVALID_INPUT = "invalid_input"
    PARSE_ERROR = "parse_error"
    JOB_FILE_ERROR = "job_file_error"
    CONFIGURATION_ERROR = "configuration_error"
    NOT_ZERO_DIMENSIONAL = "not_zero_dimensional"
    UNSUPPORTED_SHAPE = "unsupported_shape"
    POSITIVE_DIMENSIONAL_UNSUPPORTED = "positive_dimensional_unsupported"
    ASSUMPTION_VIOLATED = "assumption_violated"
    VERIFICATION_FAILED = "verification_failed"
    RESOURCE_LIMIT = "resource_limit"
    DEGENERATE_DRAW = "degenerate_draw"
    INTERNAL_ERROR = "internal_error"


# CLI exit status per error code; 0 is reserved for success.
EXIT_CODES: Dict[ErrorCode, int] = {
    ErrorCode.INVALID_INPUT: 1,
    ErrorCode.PARSE_ERROR: 1,
    ErrorCode.JOB_FILE_ERROR: 1,
    ErrorCode.CONFIGURATION_ERROR: 1,
    ErrorCode.NOT_ZERO_DIMENSIONAL: 1,
    ErrorCode.UNSUPPORTED_SHAPE: 1,
    ErrorCode.POSITIVE_DIMENSIONAL_UNSUPPORTED: 1,
    ErrorCode.ASSUMPTION_VIOLATED: 2,
    ErrorCode.VERIFICATION_FAILED: 2,
    ErrorCode.DEGENERATE_DRAW: 2,
    ErrorCode.RESOURCE_LIMIT: 3,
    ErrorCode.INTERNAL_ERROR: 1,
}


class ErrorDetail(BaseModel):
    """Schema for a single structured error fact."""
    field: Optional[str] = None
    message: str = Field(..., min_length=1)
    code: ErrorCode = ErrorCode.INVALID_INPUT


class ErrorResponse(BaseModel):
    """Schema for the machine-readable error document written on failure."""
    message: str
    code: ErrorCode
    exit_code: int = 1
    details: List[ErrorDetail] = Field(default_factory=list)
    context: Dict[str, Any] = Field(default_factory=dict)
    request_id: str = Field(default_factory=lambda: str(uuid.uuid4()))
    timestamp: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
