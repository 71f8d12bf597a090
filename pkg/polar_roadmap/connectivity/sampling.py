"""
Real sample points of hypersurfaces and curves in at most four variables,
restricted to a sublevel set phi_1 <= u.

Hypersurfaces are cut by seeded random rational lines and curves by random
rational hyperplanes; the resulting univariate or zero-dimensional problems
are solved exactly and the midpoints of their root boxes kept. Products of
such sets (variables split into blocks no generator mixes) are sampled block
by block.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import logging
import math
import random
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import cKDTree

from polar_roadmap.common.config import DEFAULT_SETTINGS, EngineSettings
from polar_roadmap.common.errors import UnsupportedShapeError
from polar_roadmap.connectivity.numeric import CompiledPoly, CompiledSystem, trace_curve
from polar_roadmap.geometry.maps import PolyMap
from polar_roadmap.geometry.sections import hyperplane_section, line_section, random_line
from polar_roadmap.groebner.ideal import Ideal
from polar_roadmap.groebner.operations import krull_dimension
from polar_roadmap.polyring.poly import Poly
from polar_roadmap.polyring.ring import PolyRing
from polar_roadmap.zerodim.solve import ZeroDimensionalSystem

logger = logging.getLogger(__name__)

MAX_VARIABLES = 4
# Root widths of exact line sections (in the line parameter) and of point boxes.
LINE_ROOT_WIDTH = Fraction(1, 2 ** 44)
POINT_WIDTH = Fraction(1, 2 ** 40)
# Line or plane batches drawn before a sublevel cloud counts as short.
SAMPLING_ROUNDS = 4


@dataclass
class PointCloud:
    points: np.ndarray
    residuals: np.ndarray
    source: str
    region: Optional[Fraction] = None
    requested: int = 0
    diagnostics: List[str] = field(default_factory=list)

    def __len__(self) -> int:
        return int(self.points.shape[0])

    @property
    def shortfall(self) -> bool:
        return len(self) < self.requested

    @classmethod
    def empty(cls, nvars: int, source: str, region: Optional[Fraction], requested: int) -> "PointCloud":
        return cls(np.empty((0, nvars)), np.empty(0), source, region, requested)


def sampling_window(phi1: Poly, u: Optional[Fraction], settings: EngineSettings) -> Tuple[np.ndarray, float]:
    """Center and radius of the box lines are drawn through."""
    n = phi1.ring.nvars
    center = PolyMap(phi1.ring, (phi1,)).squared_distance_center()
    if center is not None and u is not None and u >= 0:
        return np.array([float(a) for a in center]), math.sqrt(float(u)) * 1.05 + 1e-3
    return np.zeros(n), float(settings.sample_box_radius)


def _variable_blocks(ideal: Ideal) -> List[List[int]]:
    """Connected groups of variables under 'appear in a common generator'."""
    n = ideal.ring.nvars
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in ideal.generators:
        support = g.support()
        for a in support[1:]:
            parent[find(a)] = find(support[0])
    blocks = {}
    for k in range(n):
        blocks.setdefault(find(k), []).append(k)
    return sorted(blocks.values())


def _line_points(polys: Sequence[Poly], center, radius: float, rng: random.Random, count: int, max_lines: int) -> List[Tuple[Fraction, ...]]:
    n = polys[0].ring.nvars
    grid = max(1, int(math.ceil(radius)))
    points: List[Tuple[Fraction, ...]] = []
    for _ in range(max_lines):
        if len(points) >= count:
            break
        base, direction = random_line(rng, n, grid)
        base = tuple(b + Fraction(c).limit_denominator(64) for b, c in zip(base, center))
        points.extend(line_section(polys, base, direction, LINE_ROOT_WIDTH))
    return points


def _plane_points(ideal: Ideal, center, radius: float, rng: random.Random, count: int, max_planes: int, settings: EngineSettings) -> List[Tuple[Fraction, ...]]:
    n = ideal.ring.nvars
    points: List[Tuple[Fraction, ...]] = []
    for _ in range(max_planes):
        if len(points) >= count:
            break
        normal = [rng.randint(-9, 9) for _ in range(n)]
        if not any(normal):
            continue
        reach = sum(abs(c) for c in normal) * radius
        mid = sum(c * x for c, x in zip(normal, center))
        offset = Fraction(mid).limit_denominator(64) + Fraction(rng.randint(-int(64 * reach), int(64 * reach)), 64)
        section = hyperplane_section(ideal, normal, offset)
        if krull_dimension(section) != 0:
            continue
        system = ZeroDimensionalSystem(section, settings)
        points.extend(box.midpoint for box in system.real_boxes(POINT_WIDTH))
    return points


def _raw_points(ideal: Ideal, center, radius: float, rng: random.Random, count: int, settings: EngineSettings) -> List[Tuple[Fraction, ...]]:
    ring = ideal.ring
    n = ring.nvars
    dimension = krull_dimension(ideal)
    if dimension < 0:
        return []
    if dimension == 0:
        system = ZeroDimensionalSystem(ideal, settings)
        return [box.midpoint for box in system.real_boxes(POINT_WIDTH)]
    if dimension == n - 1:
        return _line_points(list(ideal.generators), center, radius, rng, count, max_lines=20 * count)
    if dimension == 1:
        return _plane_points(ideal, center, radius, rng, count, max_planes=4 * count, settings=settings)
    blocks = _variable_blocks(ideal)
    if len(blocks) < 2:
        raise UnsupportedShapeError(
            "only hypersurfaces, curves and products of them can be sampled", dimension=dimension, nvars=n
        )
    parts = []
    for block in blocks:
        sub_ring = PolyRing(tuple(ring.names[k] for k in block))
        gens = [g.restrict(sub_ring, block) for g in ideal.generators if set(g.support()) <= set(block)]
        sub_center = [center[k] for k in block]
        if not gens:
            # free block: uniform rational coordinates
            parts.append([
                tuple(Fraction(rng.randint(-64, 64), 64) * Fraction(radius).limit_denominator(64) + Fraction(c).limit_denominator(64) for c in sub_center)
                for _ in range(count)
            ])
            continue
        parts.append(_raw_points(Ideal(sub_ring, gens, settings), sub_center, radius, rng, count, settings))
    if any(not p for p in parts):
        return []
    points = []
    for _ in range(count):
        chosen = [rng.choice(p) for p in parts]
        coords = [Fraction(0)] * n
        for block, values in zip(blocks, chosen):
            for k, x in zip(block, values):
                coords[k] = x
        points.append(tuple(coords))
    return points


def sample_real_points(
    ideal: Ideal,
    phi1: Poly,
    u: Optional[Fraction],
    count: int,
    seed: int,
    settings: Optional[EngineSettings] = None,
    strict: bool = False,
) -> PointCloud:
    """
    Up to ``count`` real points of V(I) with phi_1 <= u (or < u when
    ``strict``). Points whose residual exceeds the tolerance are dropped.
    """
    settings = settings or ideal.settings or DEFAULT_SETTINGS
    n = ideal.ring.nvars
    if n > MAX_VARIABLES:
        raise UnsupportedShapeError("sampling supports at most four variables", nvars=n)
    source = ", ".join(ideal.generator_strings())
    rng = random.Random(seed)
    center, radius = sampling_window(phi1, u, settings)
    target = count if u is None else 2 * count
    system = CompiledSystem(ideal.generators)
    level = CompiledPoly(phi1)
    cloud = PointCloud.empty(n, source, u, count)
    rounds = 1 if krull_dimension(ideal) <= 0 else SAMPLING_ROUNDS
    kept = []
    for _ in range(rounds):
        raw = _raw_points(ideal, center, radius, rng, target, settings)
        if not raw:
            break
        X = np.array([[float(x) for x in p] for p in raw], dtype=float)
        keep = system.residuals(X) <= settings.tolerance
        if u is not None:
            levels, bound = level(X), float(u)
            keep &= (levels < bound - settings.tolerance) if strict else (levels <= bound + settings.tolerance)
        kept.append(X[keep])
        if sum(len(k) for k in kept) >= count:
            break
    if not kept:
        cloud.diagnostics.append(f"too few hits: 0 of {count} points found")
        logger.info("sampling found no real point of <%s>", source)
        return cloud

    X = np.vstack(kept)
    residuals = system.residuals(X)
    if X.shape[0] > count:
        X, residuals = X[:count], residuals[:count]
    cloud.points, cloud.residuals = X, residuals
    if cloud.shortfall:
        cloud.diagnostics.append(f"too few hits: {len(cloud)} of {count} points found")
    logger.info("sampled %d of %d requested points", len(cloud), count)
    return cloud


def densify_curve(cloud: PointCloud, ideal: Ideal, step: float, inside, tolerance: float) -> PointCloud:
    """
    Replace the samples of a real curve by vertices traced through them,
    about ``step`` apart and kept where ``inside`` holds. Samples the traces
    already pass within ``2 * step`` of start no new trace; samples no trace
    reaches are kept as they are.
    """
    n = ideal.ring.nvars
    system = CompiledSystem(ideal.generators)
    covered = np.empty((0, n))
    tree = None
    for seed in cloud.points:
        if tree is not None and tree.query(seed)[0] <= 2 * step:
            continue
        path, _ = trace_curve(system, seed, step, tolerance, inside=inside)
        path = path[[bool(inside(x)) for x in path]] if len(path) else path
        if len(path):
            covered = np.vstack([covered, path])
            tree = cKDTree(covered)
    if tree is not None and len(cloud):
        stray = cloud.points[tree.query(cloud.points)[0] > 2 * step]
    else:
        stray = cloud.points
    stray = stray[[bool(inside(x)) for x in stray]] if len(stray) else stray
    covered = np.vstack([covered, stray])
    dense = PointCloud(covered, system.residuals(covered), cloud.source, cloud.region, cloud.requested, list(cloud.diagnostics))
    logger.info("traced %d sample(s) into %d curve vertices", len(cloud), len(dense))
    return dense
