from polar_roadmap.roadmap.assumptions import (
    check_assumption_A,
    check_assumption_B,
    check_assumption_P,
    check_assumptions,
)
from polar_roadmap.roadmap.bundle import (
    FiberUnion,
    RoadmapBundle,
    SampleSet,
    assemble_roadmap,
    compute_sample_set,
    critical_value_sweep,
    image_ideal,
)

__all__ = [
    "FiberUnion",
    "RoadmapBundle",
    "SampleSet",
    "assemble_roadmap",
    "check_assumption_A",
    "check_assumption_B",
    "check_assumption_P",
    "check_assumptions",
    "compute_sample_set",
    "critical_value_sweep",
    "image_ideal",
]
