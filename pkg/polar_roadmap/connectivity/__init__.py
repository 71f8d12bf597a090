from polar_roadmap.connectivity.components import ComponentGraph, epsilon_components
from polar_roadmap.connectivity.sampling import PointCloud, densify_curve, sample_real_points
from polar_roadmap.connectivity.tracing import Polyline, SliceTrace, slice_trace_curve
from polar_roadmap.connectivity.verify import (
    Verification,
    check_bounded_component_critical,
    export_points,
    export_roadmap,
    verify_rm,
    verify_rm_sweep,
)

__all__ = [
    "ComponentGraph",
    "PointCloud",
    "Polyline",
    "SliceTrace",
    "Verification",
    "check_bounded_component_critical",
    "densify_curve",
    "epsilon_components",
    "export_points",
    "export_roadmap",
    "sample_real_points",
    "slice_trace_curve",
    "verify_rm",
    "verify_rm_sweep",
]
