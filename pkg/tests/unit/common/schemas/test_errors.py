import pytest
from pydantic import ValidationError

from polar_roadmap.common.errors import (
    AssumptionViolatedError,
    InvalidInputError,
    JobFileError,
    NotZeroDimensionalError,
    ParseError,
    ResourceLimitError,
)
from polar_roadmap.common.schemas.errors import (
    EXIT_CODES,
    ErrorCode,
    ErrorDetail,
    ErrorResponse
)

class TestErrorSchemas:
    """Test cases for error handling Pydantic schemas."""

    def test_error_code_enum(self):
        """Test ErrorCode enum."""
        assert ErrorCode.INVALID_INPUT == "invalid_input"
        assert ErrorCode.PARSE_ERROR == "parse_error"
        assert ErrorCode.ASSUMPTION_VIOLATED == "assumption_violated"
        assert ErrorCode.RESOURCE_LIMIT == "resource_limit"

        # Test conversion from string
        assert ErrorCode("job_file_error") == ErrorCode.JOB_FILE_ERROR
        assert ErrorCode("not_zero_dimensional") == ErrorCode.NOT_ZERO_DIMENSIONAL

        # Test invalid value
        with pytest.raises(ValueError):
            ErrorCode("invalid")

    def test_every_code_has_an_exit_status(self):
        """Test that exit statuses cover every code and stay in 1..3."""
        assert set(EXIT_CODES) == set(ErrorCode)
        assert EXIT_CODES[ErrorCode.PARSE_ERROR] == 1
        assert EXIT_CODES[ErrorCode.ASSUMPTION_VIOLATED] == 2
        assert EXIT_CODES[ErrorCode.VERIFICATION_FAILED] == 2
        assert EXIT_CODES[ErrorCode.RESOURCE_LIMIT] == 3
        assert set(EXIT_CODES.values()) <= {1, 2, 3}

    def test_error_detail(self):
        """Test ErrorDetail creation."""
        detail = ErrorDetail(field="line", message="3")
        assert detail.field == "line"
        assert detail.code == ErrorCode.INVALID_INPUT  # Default

        detail = ErrorDetail(field="budget", message="max_pairs", code=ErrorCode.RESOURCE_LIMIT)
        assert detail.code == ErrorCode.RESOURCE_LIMIT

    def test_error_detail_validation(self):
        """Test validation in ErrorDetail."""
        # Message required
        with pytest.raises(ValidationError) as exc_info:
            ErrorDetail(field="line", message="")
        assert "message" in str(exc_info.value)

    def test_error_response_basic(self):
        """Test basic ErrorResponse creation."""
        response = ErrorResponse(message="An error occurred", code=ErrorCode.INTERNAL_ERROR)
        assert response.message == "An error occurred"
        assert response.details == []
        assert response.request_id is not None  # Auto-generated
        assert response.timestamp is not None  # Auto-generated

    def test_error_response_dict_conversion(self):
        """Test ErrorResponse conversion to dict."""
        response = ErrorResponse(
            message="Invalid input",
            code=ErrorCode.INVALID_INPUT,
            details=[ErrorDetail(field="d", message="5")],
        )
        response_dict = response.model_dump(mode="json")
        assert response_dict["code"] == "invalid_input"
        assert response_dict["details"][0]["field"] == "d"
        assert "request_id" in response_dict
        assert "timestamp" in response_dict


class TestEngineErrors:
    """Test cases for the exception hierarchy and its error documents."""

    def test_parse_error_carries_position(self):
        """Test that parse errors report line and column."""
        exc = ParseError("unexpected token", 2, 7)
        assert exc.line == 2
        assert exc.column == 7
        assert "line 2, column 7" in exc.message
        assert isinstance(exc, InvalidInputError)
        assert exc.exit_code == 1

    def test_job_file_error_line(self):
        """Test that job file errors mention their line."""
        exc = JobFileError("unknown key 'colour'", line=4)
        assert exc.message.endswith("(line 4)")
        assert exc.details["line"] == 4

    def test_resource_limit_to_response(self):
        """Test the error document of an exhausted budget."""
        exc = ResourceLimitError("pair budget exhausted", budget="max_pairs", limit=10, reached=11)
        response = exc.to_response()
        assert response.code == ErrorCode.RESOURCE_LIMIT
        assert response.exit_code == 3
        fields = {d.field: d.message for d in response.details}
        assert fields == {"budget": "max_pairs", "limit": "10", "reached": "11"}

    def test_assumption_violation(self):
        """Test that a violated assumption maps to exit status 2."""
        exc = AssumptionViolatedError("B1", "dim W_2 = 2")
        assert exc.exit_code == 2
        assert exc.assumption == "B1"
        assert "dim W_2 = 2" in exc.message

    def test_not_zero_dimensional_keeps_dimension(self):
        """Test that the computed dimension travels with the error."""
        exc = NotZeroDimensionalError("positive dimensional", dimension=1)
        assert exc.dimension == 1
        assert exc.code == ErrorCode.NOT_ZERO_DIMENSIONAL
