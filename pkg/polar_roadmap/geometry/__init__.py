from polar_roadmap.geometry.critical import (
    CriticalLocus,
    FiberSpec,
    PolarMatch,
    VarietySpec,
    critical_ideal,
    critical_points_ideal,
    fiber_ideal,
    jacobian,
    match_polar_generator,
    minors_ideal,
    polar_minor_size,
    singular_ideal,
)
from polar_roadmap.geometry.maps import PolyMap, build_phi, projection_map, squared_distance

__all__ = [
    "CriticalLocus",
    "FiberSpec",
    "PolarMatch",
    "PolyMap",
    "VarietySpec",
    "build_phi",
    "critical_ideal",
    "critical_points_ideal",
    "fiber_ideal",
    "jacobian",
    "match_polar_generator",
    "minors_ideal",
    "polar_minor_size",
    "projection_map",
    "singular_ideal",
    "squared_distance",
]
