from datetime import datetime, timezone
from typing import Any, Dict, Literal

from pydantic import BaseModel, Field


class ReportMetadata(BaseModel):
    """Run facts that vary between identical jobs; kept out of comparisons."""
    created_at: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
    version: str
    duration_seconds: float = Field(default=0.0, ge=0)


class ReportEnvelope(BaseModel):
    """Schema for ``report.json``."""
    format: Literal[1] = 1
    job_hash: str = Field(..., min_length=1)
    command: str
    result: Dict[str, Any] = Field(default_factory=dict)
    metadata: ReportMetadata

    def deterministic_dump(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude={"metadata"})
