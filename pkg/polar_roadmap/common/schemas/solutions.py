from enum import Enum
from typing import List, Tuple

from pydantic import BaseModel, Field, model_validator


class BoxStatus(str, Enum):
    CERTIFIED_UNIQUE = "certified-unique"
    CANDIDATE = "candidate"


class SolutionBoxModel(BaseModel):
    """Schema for one real solution box; intervals are exact ``n/d`` pairs."""
    coordinates: List[Tuple[str, str]]
    status: BoxStatus = BoxStatus.CANDIDATE
    midpoint: List[float] = Field(default_factory=list)


class SolutionSetModel(BaseModel):
    """Schema for the counts and real boxes of a zero-dimensional system."""
    generators: List[str] = Field(default_factory=list)
    multiplicity_count: int = Field(..., ge=0)
    distinct_count: int = Field(..., ge=0)
    real_count: int = Field(..., ge=0)
    real_boxes: List[SolutionBoxModel] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_counts(self):
        if not self.real_count <= self.distinct_count <= self.multiplicity_count:
            raise ValueError("expected real <= distinct <= multiplicity")
        return self
