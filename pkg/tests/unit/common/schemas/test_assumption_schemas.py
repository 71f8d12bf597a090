import pytest
from pydantic import ValidationError

from polar_roadmap.common.schemas.assumptions import AssumptionCheck, AssumptionReport, AssumptionStatus


class TestAssumptionSchemas:
    """Test cases for assumption check schemas."""

    def test_violated_needs_witness(self):
        """Test that a violation without a witness is rejected."""
        with pytest.raises(ValidationError) as exc_info:
            AssumptionCheck(name="A", status=AssumptionStatus.VIOLATED, evidence="dimension")
        assert "witness" in str(exc_info.value)

        check = AssumptionCheck(name="A", status=AssumptionStatus.VIOLATED, evidence="dimension", witness="dim = 2")
        assert check.witness == "dim = 2"

    def test_evidence_required(self):
        """Test that every check states its evidence."""
        with pytest.raises(ValidationError):
            AssumptionCheck(name="P", status=AssumptionStatus.VERIFIED, evidence="")

    def test_status_values(self):
        """Test the serialized status names."""
        assert AssumptionStatus.VERIFIED_PROBABILISTICALLY == "verified-probabilistically"
        assert AssumptionStatus("violated") is AssumptionStatus.VIOLATED

    def test_missing_checks_are_unverified(self):
        """Test that the report reads absent checks as unverified."""
        report = AssumptionReport()
        assert report.get("C1").status is AssumptionStatus.UNVERIFIED
        assert report.worst is AssumptionStatus.UNVERIFIED
        assert report.violations == []

    def test_worst_status(self):
        """Test the worst status over every assumption."""
        report = AssumptionReport()
        for name in ("A", "P", "B1", "C1", "C2"):
            report = report.with_check(AssumptionCheck(name=name, status=AssumptionStatus.VERIFIED, evidence="ok"))
        report = report.with_check(
            AssumptionCheck(name="B2", status=AssumptionStatus.VERIFIED_PROBABILISTICALLY, evidence="random point")
        )
        assert report.worst is AssumptionStatus.VERIFIED_PROBABILISTICALLY

        violated = report.with_check(
            AssumptionCheck(name="B1", status=AssumptionStatus.VIOLATED, evidence="dimension", witness="dim = 2")
        )
        assert violated.worst is AssumptionStatus.VIOLATED
        assert [c.name for c in violated.violations] == ["B1"]
        # with_check leaves the original report alone
        assert report.get("B1").status is AssumptionStatus.VERIFIED
