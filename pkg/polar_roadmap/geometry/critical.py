"""
Jacobians, minor ideals, singular loci, critical loci K(phi^(i), V) and
polar varieties W(phi^(i), V), and fibers of a map restricted to V.

Rank conditions are encoded by the vanishing of minors only: a point of V
is critical for phi^(i) when the stacked Jacobian of (g, phi^(i)) has rank
below (n - d) + i there.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from polar_roadmap.common.config import DEFAULT_SETTINGS, EngineSettings
from polar_roadmap.common.errors import DimensionMismatchError, InvalidInputError, RingMismatchError
from polar_roadmap.geometry.maps import PolyMap
from polar_roadmap.groebner.ideal import Ideal
from polar_roadmap.groebner.operations import intersect_ideals, saturation
from polar_roadmap.polyring.matrix import PolyMatrix
from polar_roadmap.polyring.poly import Poly
from polar_roadmap.polyring.ring import PolyRing

logger = logging.getLogger(__name__)

LEADING_FORMS = "leading-forms"
TRAILING_FORMS = "trailing-forms"


@dataclass(frozen=True)
class VarietySpec:
    """V = V(g_1, ..., g_p) in n variables, claimed equidimensional of dimension d."""
    ring: PolyRing
    generators: Tuple[Poly, ...]
    dimension: int
    settings: EngineSettings = field(default=DEFAULT_SETTINGS, compare=False)
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if not 0 <= self.dimension <= self.ring.nvars:
            raise InvalidInputError("claimed dimension out of range", d=self.dimension, n=self.ring.nvars)
        for g in self.generators:
            if g.ring != self.ring:
                raise RingMismatchError("generator belongs to a different ring", generator=str(g))
            if g.is_zero():
                raise InvalidInputError("variety generators must be nonzero")

    @classmethod
    def from_ideal(cls, ideal: Ideal, dimension: int, name: Optional[str] = None) -> "VarietySpec":
        spec = cls(ideal.ring, ideal.generators, dimension, ideal.settings, name or ideal.name)
        spec.__dict__["ideal"] = ideal
        return spec

    @property
    def n(self) -> int:
        return self.ring.nvars

    @property
    def p(self) -> int:
        return len(self.generators)

    @property
    def codimension(self) -> int:
        return self.n - self.dimension

    @property
    def is_complete_intersection(self) -> bool:
        return self.p == self.codimension

    @cached_property
    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.generators, self.settings, name=self.name)

    def __str__(self) -> str:
        return f"V(<{', '.join(str(g) for g in self.generators)}>), d={self.dimension}"


@dataclass(frozen=True)
class FiberSpec:
    variety: VarietySpec
    map: PolyMap
    prefix: int
    value: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "value", tuple(Fraction(v) for v in self.value))
        if len(self.value) != self.prefix:
            raise DimensionMismatchError("fiber value length must equal the prefix", prefix=self.prefix, got=len(self.value))
        if self.prefix > len(self.map):
            raise InvalidInputError("prefix longer than the map", prefix=self.prefix, components=len(self.map))


@dataclass(frozen=True)
class CriticalLocus:
    """
    K = W cup sing for phi^(i) on V, with W the closure of the regular
    critical points.
    """
    variety: VarietySpec
    prefix: int
    minor_size: int
    k_ideal: Ideal = field(compare=False)
    sing_ideal: Ideal = field(compare=False)
    w_ideal: Ideal = field(compare=False)

    @property
    def has_singular_points(self) -> bool:
        return not self.sing_ideal.is_unit()

    def as_variety(self, dimension: Optional[int] = None) -> VarietySpec:
        """W as a variety of its own, by default of dimension i - 1."""
        d = self.prefix - 1 if dimension is None else dimension
        return VarietySpec.from_ideal(self.w_ideal, d, name=f"W_{self.prefix}")


def jacobian(polys: Sequence[Poly], ring: PolyRing) -> PolyMatrix:
    """Entry (j, k) is d polys_j / d x_k."""
    for p in polys:
        if p.ring != ring:
            raise RingMismatchError("polynomial belongs to a different ring", poly=str(p))
    return PolyMatrix.from_rows(ring, [p.gradient() for p in polys], cols=ring.nvars)


def minors_ideal(matrix: PolyMatrix, k: int, settings: Optional[EngineSettings] = None) -> Ideal:
    minors = matrix.minors(k)
    logger.debug("%d minors of size %d from a %dx%d matrix", len(minors), k, matrix.rows, matrix.cols)
    return Ideal(matrix.ring, minors, settings)


def singular_ideal(variety: VarietySpec) -> Ideal:
    """I(V) plus the (n - d)-minors of jac(g): the points where the rank drops below n - d."""
    codim = variety.codimension
    if variety.p < codim:
        raise InvalidInputError(
            "fewer generators than the codimension", p=variety.p, codimension=codim
        )
    if codim == 0:
        return Ideal.unit(variety.ring, variety.settings)
    minors = jacobian(variety.generators, variety.ring).minors(codim)
    return variety.ideal.with_generators(minors)


def polar_minor_size(variety: VarietySpec, i: int) -> int:
    return variety.codimension + i


def _polar_ideal(variety: VarietySpec, phi: PolyMap, i: int) -> Ideal:
    size = polar_minor_size(variety, i)
    if size > variety.n:
        # the stacked Jacobian has n columns, so every point is critical
        return variety.ideal
    rows = list(variety.generators) + list(phi.prefix(i).components)
    minors = jacobian(rows, variety.ring).minors(size)
    return variety.ideal.with_generators(minors)


def polar_closure(k_ideal: Ideal, sing_ideal: Ideal) -> Ideal:
    """
    K : sing^oo, the closure of V(K) minus V(sing), as the intersection of
    the saturations by each generator of sing not already in K.
    """
    if sing_ideal.is_unit():
        return k_ideal
    parts = [saturation(k_ideal, h) for h in sing_ideal.generators if not k_ideal.contains(h)]
    if not parts:
        return Ideal.unit(k_ideal.ring, k_ideal.settings)
    result = parts[0]
    for part in parts[1:]:
        result = intersect_ideals(result, part)
    return result


def critical_ideal(variety: VarietySpec, phi: PolyMap, i: int) -> CriticalLocus:
    if phi.ring != variety.ring:
        raise RingMismatchError("map and variety belong to different rings")
    if not 1 <= i <= min(variety.n, len(phi)):
        raise InvalidInputError("map prefix out of range", i=i, n=variety.n, components=len(phi))
    k_ideal = _polar_ideal(variety, phi, i)
    sing = singular_ideal(variety)
    w_ideal = polar_closure(k_ideal, sing)
    logger.info(
        "critical locus of phi^(%d): %d K generators, singular locus %s",
        i, len(k_ideal.generators), "empty" if sing.is_unit() else "nonempty",
    )
    return CriticalLocus(variety, i, polar_minor_size(variety, i), k_ideal, sing, w_ideal)


def fiber_ideal(fiber: FiberSpec) -> Ideal:
    """I(V) + <phi_j - value_j : j <= i>."""
    extra = [fiber.map[j] - fiber.value[j] for j in range(fiber.prefix)]
    return fiber.variety.ideal.with_generators(extra)


@dataclass(frozen=True)
class PolarMatch:
    """Which reading of phi^(i) reproduces a printed polar generator."""
    printed: Poly
    matches: Dict[str, bool]
    loci: Dict[str, Ideal] = field(compare=False)

    @property
    def matched(self) -> Optional[str]:
        return next((name for name, ok in self.matches.items() if ok), None)


def match_polar_generator(variety: VarietySpec, phi: PolyMap, i: int, printed: Poly) -> PolarMatch:
    """
    Compare <g, printed> with the polar ideal for phi^(i) as given
    (leading forms) and with the linear forms reversed (trailing forms).
    """
    target = variety.ideal.with_generators([printed])
    matches: Dict[str, bool] = {}
    loci: Dict[str, Ideal] = {}
    for name, candidate in ((LEADING_FORMS, phi), (TRAILING_FORMS, phi.with_reversed_forms())):
        locus = critical_ideal(variety, candidate, i)
        loci[name] = locus.w_ideal
        matches[name] = locus.w_ideal.equals(target)
        logger.info("printed generator vs %s: %s", name, "equal" if matches[name] else "different")
    return PolarMatch(printed, matches, loci)


def critical_points_ideal(variety: VarietySpec, phi1: Poly) -> CriticalLocus:
    """K(phi_1, V) for a single function."""
    return critical_ideal(variety, PolyMap(variety.ring, (phi1,)), 1)


__all__: List[str] = [
    "LEADING_FORMS",
    "TRAILING_FORMS",
    "CriticalLocus",
    "FiberSpec",
    "PolarMatch",
    "VarietySpec",
    "critical_ideal",
    "critical_points_ideal",
    "fiber_ideal",
    "jacobian",
    "match_polar_generator",
    "minors_ideal",
    "polar_closure",
    "polar_minor_size",
    "singular_ideal",
]
