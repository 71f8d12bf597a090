"""
Assembly of a roadmap candidate R = W_i cup F_i for (V, phi, i).

The pipeline:

* W_i = W(phi^(i), V) from the minors of the stacked Jacobian.
* S_i = real points of K(phi_1, W_i), required to be finite.
* K_i = K(phi_1, V) cup S_i cup sing(V), each part a zero-dimensional system.
* The image of K_i under phi^(i-1) is cut out by eliminants P(y); the
  critical values v_1 < ... < v_l are the real roots of the phi_1
  eliminant that are actually reached by a real point of K_i.
* F_i = V cap {P(phi^(i-1)) = 0}, kept as the unexpanded composition.
"""
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from polar_roadmap.common.config import EngineSettings, ImageBackend
from polar_roadmap.common.errors import (
    AssumptionViolatedError,
    InvalidInputError,
    NotZeroDimensionalError,
    PositiveDimensionalUnsupportedError,
)
from polar_roadmap.common.schemas.assumptions import AssumptionCheck, AssumptionReport, AssumptionStatus
from polar_roadmap.common.schemas.bundle import (
    CertificateLevel,
    CriticalLocusModel,
    FiberUnionModel,
    RoadmapBundleModel,
)
from polar_roadmap.common.serialization import interval_pair
from polar_roadmap.geometry.critical import (
    CriticalLocus,
    VarietySpec,
    critical_ideal,
    critical_points_ideal,
    match_polar_generator,
    singular_ideal,
)
from polar_roadmap.geometry.maps import PolyMap
from polar_roadmap.groebner.ideal import Ideal
from polar_roadmap.groebner.operations import elimination_ideal, intersect_ideals, krull_dimension, project_to_ring
from polar_roadmap.polyring.interval import Interval
from polar_roadmap.polyring.poly import Poly
from polar_roadmap.roadmap.assumptions import check_assumptions
from polar_roadmap.zerodim import univariate
from polar_roadmap.zerodim.solve import SolutionBox, SolutionSet, ZeroDimensionalSystem

logger = logging.getLogger(__name__)

# Halvings tried when matching a critical-value enclosure to a single root.
MAX_MATCH_ROUNDS = 40


@dataclass(frozen=True)
class SampleSet:
    """S_i: the real points of the finite set K(phi_1, W_i)."""
    source: Ideal = field(compare=False)
    solutions: SolutionSet
    system: Optional[ZeroDimensionalSystem] = field(default=None, compare=False)

    @property
    def points(self) -> Tuple[SolutionBox, ...]:
        return self.solutions.real_boxes

    def __len__(self) -> int:
        return len(self.points)


def _zero_dimensional(ideal: Ideal, label: str) -> ZeroDimensionalSystem:
    dimension = krull_dimension(ideal)
    if dimension > 0:
        raise PositiveDimensionalUnsupportedError(
            f"{label} is positive dimensional; only finite sets are supported", dimension=dimension
        )
    return ZeroDimensionalSystem(ideal, ideal.settings)


def compute_sample_set(
    variety: VarietySpec,
    phi: PolyMap,
    i: int,
    locus: Optional[CriticalLocus] = None,
) -> SampleSet:
    """Real points of the critical set of phi_1 on W_i (claimed dimension i - 1)."""
    locus = locus or critical_ideal(variety, phi, i)
    settings = variety.settings
    if locus.w_ideal.is_unit():
        empty = Ideal.unit(variety.ring, settings)
        return SampleSet(empty, SolutionSet(empty, 0, 0, 0, ()))
    w_variety = locus.as_variety(i - 1)
    source = critical_points_ideal(w_variety, phi.first).k_ideal
    system = _zero_dimensional(source, f"K(phi_1, W_{i})")
    solutions = system.solution_set(settings.box_width)
    logger.info(
        "sample set: %d points (%d complex, %d with multiplicity)",
        solutions.real_count, solutions.distinct_count, solutions.multiplicity_count,
    )
    return SampleSet(source, solutions, system)


def image_ideal(
    ideal: Ideal,
    phi: PolyMap,
    k: int,
    backend: ImageBackend = ImageBackend.KRYLOV,
) -> List[Poly]:
    """
    Generators of the vanishing ideal of phi^(k)(V(I)) in Q[y1..yk] for a
    zero-dimensional I. For k = 1 the Krylov backend returns the squarefree part
    of the minimal polynomial of phi_1 in Q[x]/I; otherwise y_j - phi_j is adjoined and x
    eliminated.
    """
    if not 1 <= k <= len(phi):
        raise InvalidInputError("image prefix out of range", k=k, components=len(phi))
    target = phi.image_ring(k)
    if ideal.is_unit():
        return [Poly.one(target)]
    if krull_dimension(ideal) > 0:
        raise NotZeroDimensionalError("image ideal needs a zero-dimensional ideal", dimension=krull_dimension(ideal))
    if k == 1 and backend is ImageBackend.KRYLOV:
        coeffs = ZeroDimensionalSystem(ideal, ideal.settings).image_eliminant(phi.first)
        # the minimal polynomial of a non-reduced I repeats factors; the image is reduced
        return [Poly.from_univariate(target, 0, univariate.squarefree(coeffs)).monic()]
    ring = ideal.ring
    extended = ring.extend([ring.fresh_name(name) for name in target.names])
    gens = [g.embed(extended) for g in ideal.generators]
    for j in range(k):
        y = Poly.var(extended, ring.nvars + j)
        gens.append(y - phi[j].embed(extended))
    keep = list(range(ring.nvars, ring.nvars + k))
    eliminated = elimination_ideal(ideal.derive(gens, ring=extended), keep)
    image = project_to_ring(eliminated, target, keep)
    return sorted(image.generators, key=lambda g: (g.degree(), str(g)))


def _eliminant_lcm(systems: Sequence[ZeroDimensionalSystem], phi1: Poly) -> List[int]:
    result: List = [1]
    for system in systems:
        if system.is_empty:
            continue
        result = univariate.lcm_q(result, system.image_eliminant(phi1))
    return univariate.to_integer(result)


@dataclass
class FiberUnion:
    """
    F_i = V cap {P(phi_1, ..., phi_k) = 0 for every image eliminant P}.
    The expanded ideal is built on first use.
    """
    variety: VarietySpec
    map: PolyMap
    prefix: int
    eliminants: Tuple[Poly, ...]

    @cached_property
    def ideal(self) -> Ideal:
        composed = [self.map.compose(p, self.prefix) for p in self.eliminants]
        return self.variety.ideal.with_generators(composed)

    def residuals(self, point: Sequence[float]) -> List[float]:
        """Values of the defining equations at a float point, without expanding the compositions."""
        values = [float(c.evaluate_float(point)) for c in self.map.prefix(self.prefix).components]
        out = [g.evaluate_float(point) for g in self.variety.generators]
        out += [p.evaluate_float(values) for p in self.eliminants]
        return out

    def to_model(self) -> FiberUnionModel:
        return FiberUnionModel(
            variety_generators=[str(g) for g in self.variety.generators],
            map_prefix=[str(c) for c in self.map.prefix(self.prefix).components],
            image_variables=list(self.map.image_ring(self.prefix).names),
            image_eliminants=[str(p) for p in self.eliminants],
        )


def certificate_level(report: AssumptionReport) -> CertificateLevel:
    worst = report.worst
    if worst is AssumptionStatus.VERIFIED and not report.ideal_caveat:
        return CertificateLevel.CERTIFIED
    if worst in (AssumptionStatus.VERIFIED, AssumptionStatus.VERIFIED_PROBABILISTICALLY):
        return CertificateLevel.PROBABILISTIC
    return CertificateLevel.UNCERTIFIED


@dataclass(frozen=True)
class RoadmapBundle:
    variety: VarietySpec
    map: PolyMap
    i: int
    w_locus: CriticalLocus
    sample_set: SampleSet
    k_parts: Dict[str, SolutionSet]
    phi1_eliminant: Tuple[int, ...]
    critical_values: Tuple[Interval, ...]
    image_eliminants: Tuple[Poly, ...]
    fibers: FiberUnion
    assumptions: AssumptionReport
    polar_match: Optional[Dict[str, bool]] = None

    @property
    def certificate(self) -> CertificateLevel:
        return certificate_level(self.assumptions)

    @property
    def w_ideal(self) -> Ideal:
        return self.w_locus.w_ideal

    @property
    def components(self) -> Tuple[Ideal, Ideal]:
        return self.w_ideal, self.fibers.ideal

    @property
    def k_points(self) -> List[SolutionBox]:
        boxes: List[SolutionBox] = []
        for part in self.k_parts.values():
            boxes.extend(part.real_boxes)
        return boxes

    def without_fibers(self) -> "RoadmapBundle":
        """The same bundle with F_i dropped, for ablation runs."""
        empty = FiberUnion(self.variety, self.map, self.fibers.prefix, (Poly.one(self.map.image_ring(self.fibers.prefix)),))
        return RoadmapBundle(
            self.variety, self.map, self.i, self.w_locus, self.sample_set, self.k_parts,
            self.phi1_eliminant, self.critical_values, (), empty, self.assumptions, self.polar_match,
        )

    def to_model(self) -> RoadmapBundleModel:
        ring = self.variety.ring
        locus = self.w_locus
        y1 = self.map.image_ring(1)
        return RoadmapBundleModel(
            variables=list(ring.names),
            generators=[str(g) for g in self.variety.generators],
            dimension=self.variety.dimension,
            map=[str(c) for c in self.map.components],
            i=self.i,
            w_locus=CriticalLocusModel(
                prefix=locus.prefix,
                minor_size=locus.minor_size,
                k_generators=locus.k_ideal.generator_strings(),
                singular_locus_empty=not locus.has_singular_points,
                w_generators=locus.w_ideal.generator_strings(),
            ),
            sample_set=self.sample_set.solutions.to_model(),
            k_parts={name: part.to_model() for name, part in self.k_parts.items()},
            phi1_eliminant=str(Poly.from_univariate(y1, 0, self.phi1_eliminant)),
            critical_values=[interval_pair(v) for v in self.critical_values],
            fibers=self.fibers.to_model(),
            assumptions=self.assumptions,
            certificate=self.certificate,
            polar_match=self.polar_match,
        )


def _phi1_enclosure(system: ZeroDimensionalSystem, phi1: Poly, index: int, width: Fraction) -> Interval:
    box = system.real_boxes(width)[index]
    return box.evaluate(phi1)


def isolate_critical_values(
    eliminant: Sequence[int],
    systems: Sequence[ZeroDimensionalSystem],
    phi1: Poly,
    width: Fraction,
) -> List[Interval]:
    """
    Root intervals of the eliminant that contain phi_1 of some real point,
    refined until each real point's enclosure meets exactly one of them.
    """
    if univariate.degree(eliminant) < 1:
        return []
    q = univariate.squarefree(eliminant)
    roots = univariate.real_roots(q, width)
    hit = set()
    for system in systems:
        if system.is_empty:
            continue
        for index in range(system.real_count):
            w = width
            for _ in range(MAX_MATCH_ROUNDS):
                enclosure = _phi1_enclosure(system, phi1, index, w)
                matching = [r for r, iv in enumerate(roots) if iv.overlaps(enclosure)]
                if len(matching) == 1:
                    hit.add(matching[0])
                    break
                w = w / 2
                roots = [univariate.refine_root(q, iv, min(iv.width, w)) if iv.width > w else iv for iv in roots]
            else:
                logger.warning("a real critical point could not be matched to a single critical value")
                hit.update(matching)
    return [roots[r] for r in sorted(hit)]


def critical_value_sweep(bundle: RoadmapBundle, margin: Fraction = Fraction(1, 10)) -> List[Fraction]:
    """Sublevels u_j = v_j + margin above each critical value, increasing."""
    margin = Fraction(margin)
    if margin <= 0:
        raise InvalidInputError("sweep margin must be positive")
    return [v.hi + margin for v in bundle.critical_values]


def assemble_roadmap(
    variety: VarietySpec,
    phi: PolyMap,
    i: int,
    settings: Optional[EngineSettings] = None,
    assumptions: Optional[AssumptionReport] = None,
    printed: Optional[Poly] = None,
) -> RoadmapBundle:
    settings = settings or variety.settings
    locus = critical_ideal(variety, phi, i)
    report = assumptions or check_assumptions(variety, phi, i, settings, locus)
    violations = report.violations
    if violations:
        first = violations[0]
        raise AssumptionViolatedError(first.name, first.witness or first.evidence)

    try:
        sample = compute_sample_set(variety, phi, i, locus)
    except PositiveDimensionalUnsupportedError as exc:
        logger.error("sample set is not finite: %s", exc.message)
        raise
    finite = AssumptionCheck(
        name="C1", status=AssumptionStatus.VERIFIED,
        evidence=f"K(phi_1, W_{i}) is finite with {sample.solutions.distinct_count} points",
    )
    exhaustive = AssumptionCheck(
        name="C2", status=AssumptionStatus.VERIFIED,
        evidence=f"S_{i} holds all {len(sample)} real points of K(phi_1, W_{i})",
    )
    report = report.with_check(finite).with_check(exhaustive)

    phi1 = phi.first
    systems: Dict[str, ZeroDimensionalSystem] = {
        "critical": _zero_dimensional(critical_points_ideal(variety, phi1).k_ideal, "K(phi_1, V)"),
        "samples": sample.system or _zero_dimensional(sample.source, f"K(phi_1, W_{i})"),
    }
    sing = singular_ideal(variety)
    if not sing.is_unit():
        systems["singular"] = _zero_dimensional(sing, "sing(V)")

    k = i - 1
    eliminant = _eliminant_lcm(list(systems.values()), phi1)
    if k == 1 and settings.image_backend is ImageBackend.KRYLOV:
        image = (Poly.from_univariate(phi.image_ring(1), 0, eliminant),)
    else:
        union = None
        for system in systems.values():
            union = system.ideal if union is None else intersect_ideals(union, system.ideal)
        image = tuple(image_ideal(union, phi, k, settings.image_backend))

    values = isolate_critical_values(eliminant, list(systems.values()), phi1, settings.box_width)
    logger.info("eliminant of degree %d, %d real critical values", univariate.degree(eliminant), len(values))

    bundle = RoadmapBundle(
        variety=variety,
        map=phi,
        i=i,
        w_locus=locus,
        sample_set=sample,
        k_parts={name: system.solution_set(settings.box_width) for name, system in systems.items()},
        phi1_eliminant=tuple(eliminant),
        critical_values=tuple(values),
        image_eliminants=image,
        fibers=FiberUnion(variety, phi, k, image),
        assumptions=report,
        polar_match=None,
    )
    if printed is not None:
        match = match_polar_generator(variety, phi, i, printed)
        bundle = replace(bundle, polar_match=dict(match.matches))
    logger.info("roadmap bundle assembled, certificate %s", bundle.certificate.value)
    return bundle
