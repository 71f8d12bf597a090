from enum import Enum
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field

from polar_roadmap.common.schemas.assumptions import AssumptionReport
from polar_roadmap.common.schemas.solutions import SolutionSetModel


class CertificateLevel(str, Enum):
    CERTIFIED = "certified"
    PROBABILISTIC = "probabilistic"
    UNCERTIFIED = "uncertified"


class CriticalLocusModel(BaseModel):
    """Schema for K, sing and W of one map prefix."""
    prefix: int = Field(..., ge=1)
    minor_size: int = Field(..., ge=1)
    k_generators: List[str]
    singular_locus_empty: bool
    w_generators: List[str]


class FiberUnionModel(BaseModel):
    """
    F_i as I(V) + <P(phi_1, ..., phi_k)>, kept unexpanded: the composition
    is given by the image eliminants and the map prefix.
    """
    variety_generators: List[str]
    map_prefix: List[str]
    image_variables: List[str]
    image_eliminants: List[str]


class RoadmapBundleModel(BaseModel):
    """Schema for the serialized roadmap bundle R = W_i cup F_i."""
    format: Literal[1] = 1
    variables: List[str]
    generators: List[str]
    dimension: int
    map: List[str]
    i: int
    w_locus: CriticalLocusModel
    sample_set: SolutionSetModel
    k_parts: Dict[str, SolutionSetModel] = Field(default_factory=dict)
    phi1_eliminant: str
    critical_values: List[Tuple[str, str]] = Field(default_factory=list)
    fibers: FiberUnionModel
    assumptions: AssumptionReport
    certificate: CertificateLevel
    polar_match: Optional[Dict[str, bool]] = None
