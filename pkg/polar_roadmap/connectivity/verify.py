"""
Numerical checks of the roadmap property on sublevel sets.

For a sublevel bound u, the variety V cap {phi_1 <= u} is sampled and split
into epsilon-graph components. The roadmap is realised as a graph whose
vertices are points of W_i (exact slices densified by curve tracing), of the
fiber union F_i (traced level curves) and of K_i. A component passes when it
meets the roadmap and the roadmap vertices inside it form one connected
piece. Anything that makes the component partition itself doubtful turns
the verdict into ``inconclusive``, never into ``fail``.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import cKDTree

from polar_roadmap.common.config import EngineSettings
from polar_roadmap.common.errors import UnsupportedShapeError
from polar_roadmap.common.schemas.connectivity import (
    BoundedComponentModel,
    BoundedComponentReportModel,
    ComponentCheck,
    ConnectivityReportModel,
    SweepReportModel,
    Verdict,
)
from polar_roadmap.common.serialization import rational_text, write_csv
from polar_roadmap.connectivity.components import ComponentGraph, epsilon_components, label_components, median_spacing
from polar_roadmap.connectivity.numeric import CompiledPoly, CompiledSystem, newton_project, trace_curve
from polar_roadmap.connectivity.sampling import PointCloud, densify_curve, sample_real_points, sampling_window
from polar_roadmap.connectivity.tracing import Polyline, slice_trace_curve
from polar_roadmap.geometry.critical import VarietySpec, critical_points_ideal
from polar_roadmap.groebner.ideal import Ideal
from polar_roadmap.groebner.operations import krull_dimension
from polar_roadmap.polyring.poly import Poly
from polar_roadmap.roadmap.bundle import RoadmapBundle, critical_value_sweep
from polar_roadmap.zerodim import univariate
from polar_roadmap.zerodim.solve import ZeroDimensionalSystem

logger = logging.getLogger(__name__)

# Root width used for the real values the fibers sit over.
FIBER_VALUE_WIDTH = Fraction(1, 2 ** 40)


@dataclass
class RoadmapGraph:
    """Roadmap vertices with the edges of every traced piece; tag says which part a vertex came from."""
    vertices: np.ndarray
    edges: List[Tuple[int, int]] = field(default_factory=list)
    tags: List[str] = field(default_factory=list)

    def add_path(self, path: np.ndarray, tag: str) -> None:
        if not len(path):
            return
        start = len(self.vertices)
        self.vertices = np.vstack([self.vertices, path])
        self.tags.extend([tag] * len(path))
        self.edges.extend((start + k, start + k + 1) for k in range(len(path) - 1))

    def add_points(self, points: np.ndarray, tag: str) -> None:
        self.add_path(points, tag)
        # isolated points: drop the chain edges just added
        if len(points) > 1:
            del self.edges[-(len(points) - 1):]

    def __len__(self) -> int:
        return int(self.vertices.shape[0])


@dataclass
class Verification:
    """Everything a verify run produced, for reports and CSV export."""
    report: ConnectivityReportModel
    cloud: PointCloud
    graph: ComponentGraph
    roadmap: RoadmapGraph


def _inside(phi1: CompiledPoly, u: float, slack: float):
    return lambda x: phi1.value(x) <= u + slack


def _sublevel_cloud(ideal: Ideal, phi1: Poly, u: Fraction, settings: EngineSettings, strict: bool = False) -> PointCloud:
    """Samples of V(ideal) below u; curves are traced through their samples inside the sampling window."""
    cloud = sample_real_points(ideal, phi1, u, settings.sample_count, settings.seed, settings, strict=strict)
    if len(cloud) < 2 or krull_dimension(ideal) != 1:
        return cloud
    center, radius = sampling_window(phi1, u, settings)
    compiled = CompiledPoly(phi1)
    bound = float(u) - settings.tolerance if strict else float(u) + settings.tolerance

    def inside(x) -> bool:
        level = compiled.value(x)
        below = level < bound if strict else level <= bound
        return below and float(np.max(np.abs(x - center))) <= radius

    step = max(median_spacing(cloud.points), radius / (4 * settings.sample_count))
    return densify_curve(cloud, ideal, step, inside, settings.tolerance)


def _trace_from(system: CompiledSystem, seeds: np.ndarray, step: float, tolerance: float, inside, roadmap: RoadmapGraph, tag: str) -> int:
    """Trace the curve through every seed not already covered; returns the number of traces."""
    traced = 0
    covered = np.empty((0, seeds.shape[1] if seeds.ndim == 2 else 0))
    tree = None
    for seed in seeds:
        if tree is not None and tree.query(seed)[0] <= 2 * step:
            continue
        path, reason = trace_curve(system, seed, step, tolerance, inside=inside)
        if not len(path):
            continue
        logger.debug("%s trace of %d vertices stopped: %s", tag, len(path), reason)
        roadmap.add_path(path, tag)
        covered = np.vstack([covered, path])
        tree = cKDTree(covered)
        traced += 1
    return traced


def _k_points(bundle: RoadmapBundle, phi1: CompiledPoly, u: float, slack: float) -> np.ndarray:
    n = bundle.variety.n
    points = [box.midpoint_float() for box in bundle.k_points]
    X = np.array(points, dtype=float).reshape(len(points), n)
    if not len(X):
        return X
    return X[phi1(X) <= u + slack]


def _slice_levels(bundle: RoadmapBundle, u: Fraction, count: int) -> List[Fraction]:
    lows = [v.lo for v in bundle.critical_values]
    lo = min(lows) if lows else Fraction(0)
    if lo >= u:
        return []
    return [lo + (u - lo) * Fraction(2 * k + 1, 2 * count) for k in range(count)]


def _w_part(bundle: RoadmapBundle, u: Fraction, settings: EngineSettings, step: float, roadmap: RoadmapGraph, diagnostics: List[str]) -> None:
    w = bundle.w_ideal
    dimension = krull_dimension(w)
    phi1 = bundle.map.first
    if dimension == -1:
        diagnostics.append(f"W_{bundle.i} is empty")
        return
    if dimension == 0:
        boxes = ZeroDimensionalSystem(w, settings).real_boxes()
        roadmap.add_points(np.array([b.midpoint_float() for b in boxes], dtype=float).reshape(len(boxes), w.ring.nvars), "W")
        return
    if dimension != 1:
        raise UnsupportedShapeError("only roadmap curves can be traced", dimension=dimension)
    levels = _slice_levels(bundle, u, settings.slice_levels)
    sliced = slice_trace_curve(w, phi1, levels, bundle.critical_values, settings)
    for line in sliced.polylines:
        roadmap.add_path(line.vertices, "W")
    if sliced.perturbed:
        diagnostics.append(f"{len(sliced.perturbed)} slice level(s) moved off critical values")
    seeds = np.vstack([p for p in sliced.points if len(p)]) if any(len(p) for p in sliced.points) else np.empty((0, w.ring.nvars))
    system = CompiledSystem(w.generators)
    inside = _inside(CompiledPoly(phi1), float(u), settings.tolerance)
    _trace_from(system, seeds, step, settings.tolerance, inside, roadmap, "W")


def fiber_values(bundle: RoadmapBundle, u: Fraction) -> List[Fraction]:
    """Real values phi_1 takes on the fiber union, up to u."""
    if bundle.fibers.prefix != 1:
        raise UnsupportedShapeError("fibers over more than one coordinate are not traced", prefix=bundle.fibers.prefix)
    values = set()
    for p in bundle.fibers.eliminants:
        coeffs = univariate.trim(p.univariate_coefficients(0))
        if univariate.degree(coeffs) < 1:
            continue
        for iv in univariate.real_roots(univariate.squarefree(coeffs), FIBER_VALUE_WIDTH):
            if iv.lo <= u:
                values.add(iv.midpoint)
    return sorted(values)


def _fiber_part(
    bundle: RoadmapBundle,
    u: Fraction,
    cloud: PointCloud,
    k_points: np.ndarray,
    settings: EngineSettings,
    step: float,
    roadmap: RoadmapGraph,
) -> int:
    phi1 = bundle.map.first
    compiled = CompiledPoly(phi1)
    rng = np.random.default_rng(settings.seed)
    traces = 0
    for v in fiber_values(bundle, u):
        level = float(v)
        system = CompiledSystem(list(bundle.variety.generators) + [phi1 - v])
        seeds = []
        for x in k_points:
            if abs(compiled.value(x) - level) <= 1e-6 * max(1.0, abs(level)):
                for _ in range(4):
                    direction = rng.standard_normal(len(x))
                    seeds.append(x + step * direction / np.linalg.norm(direction))
        if len(cloud):
            gaps = np.abs(compiled(cloud.points) - level)
            slopes = np.linalg.norm(compiled.gradient(cloud.points), axis=1)
            band = cloud.points[gaps <= 2 * step * np.maximum(slopes, 1e-12)]
            seeds.extend(band)
        projected = [newton_project(system, s, settings.tolerance) for s in seeds]
        projected = np.array([p for p in projected if p is not None], dtype=float).reshape(-1, bundle.variety.n)
        traces += _trace_from(system, projected, step, settings.tolerance, None, roadmap, f"F@{v}")
    return traces


def _component_checks(graph: ComponentGraph, roadmap: RoadmapGraph, labels: Sequence[int], below: np.ndarray) -> List[ComponentCheck]:
    """Roadmap vertices flagged in ``below`` join the component of their nearest sample."""
    vertex_labels = graph.nearest(roadmap.vertices) if len(roadmap) else np.zeros(0, dtype=int)
    vertex_labels[~below] = -1
    checks = []
    for c in labels:
        inside = np.flatnonzero(vertex_labels == c)
        # connectivity of the roadmap restricted to the component
        if len(inside):
            local = {j: k for k, j in enumerate(inside)}
            edges = [(local[a], local[b]) for a, b in roadmap.edges if a in local and b in local]
            count, _ = label_components(roadmap.vertices[inside], graph.epsilon, edges)
            connected = count == 1
        else:
            connected = False
        checks.append(ComponentCheck(
            component=int(c), size=int(graph.sizes[c]),
            has_roadmap_point=bool(len(inside)), roadmap_connected=bool(connected),
        ))
    logger.debug("roadmap has %d vertices", len(roadmap))
    return checks


def verify_rm(
    variety: VarietySpec,
    bundle: RoadmapBundle,
    u,
    settings: Optional[EngineSettings] = None,
    include_fibers: bool = True,
) -> Verification:
    """
    Check that every component of V cap {phi_1 <= u} meets the roadmap in a
    nonempty connected set. ``include_fibers=False`` drops F_i.
    """
    settings = settings or variety.settings
    u = Fraction(u)
    phi1 = bundle.map.first
    diagnostics: List[str] = []
    if bundle.critical_values and u <= max(v.hi for v in bundle.critical_values):
        diagnostics.append("u does not exceed every critical value")

    cloud = _sublevel_cloud(variety.ideal, phi1, u, settings)
    diagnostics.extend(cloud.diagnostics)
    if len(cloud) < 2:
        report = ConnectivityReportModel(
            u=rational_text(u), variety_components=0, verdict=Verdict.INCONCLUSIVE,
            sample_count=len(cloud), include_fibers=include_fibers, diagnostics=diagnostics + ["not enough samples"],
        )
        return Verification(report, cloud, epsilon_components(cloud.points, 0.0), RoadmapGraph(np.empty((0, variety.n))))

    graph = epsilon_components(cloud.points, factor=settings.epsilon_factor, min_size=settings.min_component_size)
    step = graph.epsilon / 3
    roadmap = RoadmapGraph(np.empty((0, variety.n)))
    compiled = CompiledPoly(phi1)
    k_points = _k_points(bundle, compiled, float(u), settings.tolerance)
    roadmap.add_points(k_points, "K")
    _w_part(bundle, u, settings, step, roadmap, diagnostics)
    if include_fibers:
        traces = _fiber_part(bundle, u, cloud, k_points, settings, step, roadmap)
        logger.info("traced %d fiber curve(s)", traces)
    else:
        diagnostics.append("fibers excluded")

    labels = graph.significant(settings.min_component_size)
    small = graph.count - len(labels)
    if small:
        diagnostics.append(f"{small} component(s) below {settings.min_component_size} points ignored")
    below = compiled(roadmap.vertices) <= float(u) + settings.tolerance if len(roadmap) else np.zeros(0, dtype=bool)
    checks = _component_checks(graph, roadmap, labels, below)
    if not graph.stable:
        verdict = Verdict.INCONCLUSIVE
        diagnostics.append("component count changes between epsilon and twice epsilon")
    elif not labels:
        verdict = Verdict.INCONCLUSIVE
    elif all(c.has_roadmap_point and c.roadmap_connected for c in checks):
        verdict = Verdict.PASS
    else:
        verdict = Verdict.FAIL
    report = ConnectivityReportModel(
        u=rational_text(u),
        variety_components=len(labels),
        components=checks,
        verdict=verdict,
        epsilon=graph.epsilon,
        stable=graph.stable,
        sample_count=len(cloud),
        roadmap_points=len(roadmap),
        include_fibers=include_fibers,
        diagnostics=diagnostics,
    )
    logger.info("RM_%s verdict %s over %d component(s)", report.u, verdict.value, len(labels))
    return Verification(report, cloud, graph, roadmap)


def verify_rm_sweep(
    variety: VarietySpec,
    bundle: RoadmapBundle,
    margin: Fraction = Fraction(1, 10),
    settings: Optional[EngineSettings] = None,
    include_fibers: bool = True,
) -> SweepReportModel:
    """verify_rm just above every critical value; the overall verdict is the worst level's."""
    reports = [
        verify_rm(variety, bundle, u, settings, include_fibers).report
        for u in critical_value_sweep(bundle, margin)
    ]
    worst = max((r.verdict for r in reports), key=lambda v: v.severity, default=Verdict.INCONCLUSIVE)
    return SweepReportModel(levels=reports, verdict=worst)


def _critical_points(Z: Ideal, phi: Poly, u: Fraction, settings: EngineSettings, seed: int) -> np.ndarray:
    dimension = krull_dimension(Z)
    locus = critical_points_ideal(VarietySpec.from_ideal(Z, dimension), phi)
    k = locus.k_ideal
    k_dimension = krull_dimension(k)
    if k_dimension == -1:
        return np.empty((0, Z.ring.nvars))
    if k_dimension == 0:
        boxes = ZeroDimensionalSystem(k, settings).real_boxes()
        return np.array([b.midpoint_float() for b in boxes], dtype=float).reshape(len(boxes), Z.ring.nvars)
    # positive-dimensional critical set: sample it like any other variety
    cloud = sample_real_points(k, phi, u, max(50, settings.sample_count // 10), seed, settings)
    return cloud.points


def check_bounded_component_critical(
    Z: Ideal,
    phi: Poly,
    u,
    settings: Optional[EngineSettings] = None,
) -> BoundedComponentReportModel:
    """
    Every bounded component of Z cap {phi < u} should contain a real
    critical point of phi on Z. A component counts as bounded when none of
    its samples comes within epsilon of the sampling window's boundary.
    """
    settings = settings or Z.settings
    u = Fraction(u)
    diagnostics: List[str] = []
    critical = _critical_points(Z, phi, u, settings, settings.seed + 1)
    compiled = CompiledPoly(phi)
    if len(critical):
        critical = critical[compiled(critical) <= float(u) + settings.tolerance]
    cloud = _sublevel_cloud(Z, phi, u, settings, strict=True)
    diagnostics.extend(cloud.diagnostics)
    if len(cloud) < 2:
        return BoundedComponentReportModel(
            u=rational_text(u), critical_points=len(critical), verdict=Verdict.INCONCLUSIVE,
            diagnostics=diagnostics + ["not enough samples"],
        )
    graph = epsilon_components(cloud.points, factor=settings.epsilon_factor, min_size=settings.min_component_size)
    center, radius = sampling_window(phi, u, settings)
    critical_labels = graph.nearest(critical, radius=graph.epsilon) if len(critical) else np.zeros(0, dtype=int)
    components = []
    for c in graph.significant(settings.min_component_size):
        members = cloud.points[graph.members(c)]
        reach = np.max(np.abs(members - center))
        bounded = bool(reach < radius - graph.epsilon)
        components.append(BoundedComponentModel(
            component=c, size=len(members), bounded=bounded,
            has_critical_point=bool(np.any(critical_labels == c)) if bounded else None,
        ))
    bounded = [c for c in components if c.bounded]
    if not graph.stable:
        verdict = Verdict.INCONCLUSIVE
        diagnostics.append("component count changes between epsilon and twice epsilon")
    elif not bounded:
        verdict = Verdict.INCONCLUSIVE
        diagnostics.append("no bounded component sampled")
    elif all(c.has_critical_point for c in bounded):
        verdict = Verdict.PASS
    else:
        verdict = Verdict.FAIL
    logger.info("bounded-component check at u=%s: %s", rational_text(u), verdict.value)
    return BoundedComponentReportModel(
        u=rational_text(u), critical_points=len(critical), components=components, verdict=verdict,
        epsilon=graph.epsilon, stable=graph.stable, diagnostics=diagnostics,
    )


def export_points(path, verification: Verification) -> None:
    """One row per sample: component id, coordinates and residual."""
    cloud, graph = verification.cloud, verification.graph
    n = cloud.points.shape[1]
    rows = [
        [int(graph.labels[k])] + [repr(float(x)) for x in cloud.points[k]] + [repr(float(cloud.residuals[k]))]
        for k in range(len(cloud))
    ]
    write_csv(path, ["component"] + [f"x{j + 1}" for j in range(n)] + ["residual"], rows)


def export_roadmap(path, verification: Verification, system: Optional[CompiledSystem] = None) -> None:
    """One row per roadmap vertex: nearest component (-1 if none), part tag, coordinates and residual on V."""
    roadmap, graph = verification.roadmap, verification.graph
    n = roadmap.vertices.shape[1]
    labels = graph.nearest(roadmap.vertices, radius=graph.epsilon) if len(roadmap) else []
    residuals = system.residuals(roadmap.vertices) if system is not None and len(roadmap) else np.zeros(len(roadmap))
    rows = [
        [int(labels[k]), roadmap.tags[k]] + [repr(float(x)) for x in roadmap.vertices[k]] + [repr(float(residuals[k]))]
        for k in range(len(roadmap))
    ]
    write_csv(path, ["component", "part"] + [f"x{j + 1}" for j in range(n)] + ["residual"], rows)


def polylines_residual(polylines: Sequence[Polyline], ideal: Ideal) -> float:
    """Largest generator value over all polyline vertices."""
    system = CompiledSystem(ideal.generators)
    worst = [float(np.max(system.residuals(p.vertices))) for p in polylines if len(p)]
    return max(worst, default=0.0)
