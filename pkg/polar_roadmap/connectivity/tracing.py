"""
Roadmap curves realised as polylines.

``slice_trace_curve`` cuts a real curve by the level sets phi_1 = t at a
list of rational levels, solves every level exactly and links the points of
consecutive levels into branches. Levels that land on a critical value are
moved by a small rational offset before solving.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import logging
from typing import Dict, List, Optional, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from polar_roadmap.common.config import EngineSettings
from polar_roadmap.common.errors import DegenerateDrawError, UnsupportedShapeError
from polar_roadmap.groebner.ideal import Ideal
from polar_roadmap.groebner.operations import krull_dimension
from polar_roadmap.polyring.interval import Interval
from polar_roadmap.polyring.poly import Poly
from polar_roadmap.zerodim.solve import ZeroDimensionalSystem

logger = logging.getLogger(__name__)

# Root box width of level solves.
LEVEL_WIDTH = Fraction(1, 2 ** 40)
# Perturbation step, as a fraction of the smallest gap between critical values.
PERTURBATION = Fraction(1, 1000)


@dataclass
class Polyline:
    branch: int
    vertices: np.ndarray
    levels: List[Fraction] = field(default_factory=list)

    def __len__(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def edges(self) -> List[tuple]:
        return [(k, k + 1) for k in range(len(self) - 1)]


@dataclass
class SliceTrace:
    levels: List[Fraction]
    counts: List[int]
    points: List[np.ndarray]
    polylines: List[Polyline]
    perturbed: Dict[str, str] = field(default_factory=dict)

    @property
    def vertex_count(self) -> int:
        return sum(len(p) for p in self.polylines)


def _gap(levels: Sequence[Fraction], critical: Sequence[Fraction]) -> Fraction:
    marks = sorted(set(critical) | set(levels))
    gaps = [b - a for a, b in zip(marks, marks[1:]) if b > a]
    return min(gaps) if gaps else Fraction(1)


def _solve_level(curve: Ideal, phi1: Poly, t: Fraction, critical: Sequence[Interval]) -> np.ndarray:
    if any(iv.contains(t) for iv in critical):
        raise DegenerateDrawError("level is a critical value", level=str(t))
    system = ZeroDimensionalSystem(curve.with_generators([phi1 - t]), curve.settings)
    if system.is_empty:
        return np.empty((0, curve.ring.nvars))
    if system.dimension != 0:
        raise DegenerateDrawError("level system is not zero-dimensional", level=str(t))
    if system.multiplicity_count != system.distinct_count:
        # a multiple point on the level: phi_1 is critical there
        raise DegenerateDrawError("level meets a critical point", level=str(t))
    boxes = system.real_boxes(LEVEL_WIDTH)
    return np.array([box.midpoint_float() for box in boxes], dtype=float).reshape(len(boxes), curve.ring.nvars)


def solve_level(
    curve: Ideal,
    phi1: Poly,
    level: Fraction,
    critical: Sequence[Interval],
    gap: Fraction,
    max_redraws: int,
):
    """
    Real points of the curve on phi_1 = level, moving the level by
    +-k * gap / 1000 (k = 1, 2, ...) while it hits a critical value.
    """
    attempt = {"k": 0}

    def shifted() -> Fraction:
        k = attempt["k"]
        step = PERTURBATION * gap * ((k + 1) // 2)
        return level + (step if k % 2 else -step)

    def run():
        t = shifted()
        attempt["k"] += 1
        return t, _solve_level(curve, phi1, t, critical)

    for trial in Retrying(
        stop=stop_after_attempt(2 * max_redraws + 1),
        retry=retry_if_exception_type(DegenerateDrawError),
        reraise=True,
    ):
        with trial:
            t, points = run()
    return t, points


def _link(previous: np.ndarray, current: np.ndarray):
    if not len(previous) or not len(current):
        return []
    cost = np.linalg.norm(previous[:, None, :] - current[None, :, :], axis=2)
    rows, cols = linear_sum_assignment(cost)
    return list(zip(rows.tolist(), cols.tolist()))


def slice_trace_curve(
    curve: Ideal,
    phi1: Poly,
    levels: Sequence,
    critical_values: Sequence[Interval] = (),
    settings: Optional[EngineSettings] = None,
) -> SliceTrace:
    """
    Exact level slices of a real curve, linked into polylines.

    Points of consecutive levels are matched by a minimum-cost assignment;
    no link is made across a critical value, so every polyline stays inside
    one interval between critical values where the branch count is constant.
    """
    settings = settings or curve.settings
    levels = sorted(Fraction(t) for t in levels)
    dimension = krull_dimension(curve)
    if dimension == -1 or not levels:
        return SliceTrace(levels, [0] * len(levels), [np.empty((0, curve.ring.nvars))] * len(levels), [])
    if dimension != 1:
        raise UnsupportedShapeError("slicing needs a curve", dimension=dimension)

    critical = [Interval.coerce(v) for v in critical_values]
    gap = _gap(levels, [v.midpoint for v in critical])
    used: List[Fraction] = []
    points: List[np.ndarray] = []
    perturbed: Dict[str, str] = {}
    for level in levels:
        t, found = solve_level(curve, phi1, level, critical, gap, settings.max_redraws)
        if t != level:
            logger.info("level %s moved to %s", level, t)
            perturbed[str(level)] = str(t)
        used.append(t)
        points.append(found)

    polylines: List[Polyline] = []
    open_lines: Dict[int, Polyline] = {}
    for j, (t, found) in enumerate(zip(used, points)):
        links = {}
        if j and not any(used[j - 1] < v.midpoint < t for v in critical):
            links = {c: r for r, c in _link(points[j - 1], found)}
        lines: Dict[int, Polyline] = {}
        for c in range(len(found)):
            r = links.get(c)
            line = open_lines.get(r) if r is not None else None
            if line is None:
                line = Polyline(branch=len(polylines), vertices=np.empty((0, curve.ring.nvars)))
                polylines.append(line)
            line.vertices = np.vstack([line.vertices, found[c]])
            line.levels.append(t)
            lines[c] = line
        open_lines = lines

    counts = [len(p) for p in points]
    logger.info("sliced at %d levels, %d polylines", len(used), len(polylines))
    return SliceTrace(used, counts, points, polylines, perturbed)
