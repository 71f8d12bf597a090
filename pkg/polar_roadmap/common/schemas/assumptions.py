from enum import Enum
from typing import Dict, Optional

from pydantic import BaseModel, Field, model_validator


class AssumptionStatus(str, Enum):
    VERIFIED = "verified"
    VERIFIED_PROBABILISTICALLY = "verified-probabilistically"
    UNVERIFIED = "unverified"
    VIOLATED = "violated"

    @property
    def severity(self) -> int:
        return _SEVERITY[self]


_SEVERITY = {
    AssumptionStatus.VERIFIED: 0,
    AssumptionStatus.VERIFIED_PROBABILISTICALLY: 1,
    AssumptionStatus.UNVERIFIED: 2,
    AssumptionStatus.VIOLATED: 3,
}

ASSUMPTION_NAMES = ("A", "P", "B1", "B2", "C1", "C2")


class AssumptionCheck(BaseModel):
    """Schema for the outcome of one assumption check."""
    name: str
    status: AssumptionStatus
    evidence: str = Field(..., min_length=1)
    witness: Optional[str] = None

    @model_validator(mode="after")
    def violated_needs_witness(self):
        if self.status is AssumptionStatus.VIOLATED and not self.witness:
            raise ValueError("a violated assumption must carry a witness")
        return self


class AssumptionReport(BaseModel):
    """Schema for the statuses of (A), (P), (B1), (B2), (C1) and (C2)."""
    checks: Dict[str, AssumptionCheck] = Field(default_factory=dict)
    ideal_caveat: bool = False

    def get(self, name: str) -> AssumptionCheck:
        check = self.checks.get(name)
        if check is None:
            return AssumptionCheck(name=name, status=AssumptionStatus.UNVERIFIED, evidence="not checked")
        return check

    def with_check(self, check: AssumptionCheck) -> "AssumptionReport":
        checks = dict(self.checks)
        checks[check.name] = check
        return self.model_copy(update={"checks": checks})

    @property
    def violations(self):
        return [c for c in self.checks.values() if c.status is AssumptionStatus.VIOLATED]

    @property
    def worst(self) -> AssumptionStatus:
        statuses = [self.get(name).status for name in ASSUMPTION_NAMES]
        return max(statuses, key=lambda s: s.severity)
