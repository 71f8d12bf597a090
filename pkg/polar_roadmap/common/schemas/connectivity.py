from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field, model_validator


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"

    @property
    def severity(self) -> int:
        return {"pass": 0, "inconclusive": 1, "fail": 2}[self.value]


class ComponentCheck(BaseModel):
    """Schema for one numerically detected component of the sublevel set."""
    component: int = Field(..., ge=0)
    size: int = Field(..., ge=0)
    has_roadmap_point: bool
    roadmap_connected: bool


class ConnectivityReportModel(BaseModel):
    """Schema for an RM_u verdict."""
    u: str
    variety_components: int = Field(..., ge=0)
    components: List[ComponentCheck] = Field(default_factory=list)
    verdict: Verdict
    epsilon: float = 0.0
    stable: bool = True
    sample_count: int = 0
    roadmap_points: int = 0
    include_fibers: bool = True
    diagnostics: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def pass_needs_every_component(self):
        if self.verdict is Verdict.PASS:
            if not self.stable:
                raise ValueError("an unstable component graph cannot pass")
            if not all(c.has_roadmap_point and c.roadmap_connected for c in self.components):
                raise ValueError("pass requires every component to meet the roadmap in a connected set")
        return self


class SweepReportModel(BaseModel):
    """Schema for RM_u checks at every level of a critical-value sweep."""
    levels: List[ConnectivityReportModel] = Field(default_factory=list)
    verdict: Verdict


class BoundedComponentModel(BaseModel):
    component: int = Field(..., ge=0)
    size: int = Field(..., ge=0)
    bounded: bool
    has_critical_point: Optional[bool] = None


class BoundedComponentReportModel(BaseModel):
    """Schema for the check that bounded sublevel components meet K(phi, Z)."""
    u: str
    critical_points: int = Field(..., ge=0)
    components: List[BoundedComponentModel] = Field(default_factory=list)
    verdict: Verdict
    epsilon: float = 0.0
    stable: bool = True
    diagnostics: List[str] = Field(default_factory=list)
