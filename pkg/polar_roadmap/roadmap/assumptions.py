"""
Checks for the hypotheses a roadmap bundle relies on.

Every check answers with one of four statuses and never claims more than
it proved: ``verified`` for exact arguments, ``verified-probabilistically``
when the evidence comes from random sections or fibers, ``unverified`` when
nothing conclusive was found and ``violated`` together with a witness.
"""
from fractions import Fraction
import logging
import random
from typing import List, Optional, Tuple

from polar_roadmap.common.config import EngineSettings
from polar_roadmap.common.errors import InvalidInputError
from polar_roadmap.common.schemas.assumptions import AssumptionCheck, AssumptionReport, AssumptionStatus
from polar_roadmap.geometry.critical import (
    CriticalLocus,
    FiberSpec,
    VarietySpec,
    critical_ideal,
    fiber_ideal,
    singular_ideal,
)
from polar_roadmap.geometry.maps import PolyMap
from polar_roadmap.geometry.sections import hyperplane_section, line_section, random_line
from polar_roadmap.groebner.operations import krull_dimension, radical_contains
from polar_roadmap.zerodim.solve import ZeroDimensionalSystem

logger = logging.getLogger(__name__)

VERIFIED = AssumptionStatus.VERIFIED
PROBABLY = AssumptionStatus.VERIFIED_PROBABILISTICALLY
UNVERIFIED = AssumptionStatus.UNVERIFIED
VIOLATED = AssumptionStatus.VIOLATED


def _check(name: str, status: AssumptionStatus, evidence: str, witness: Optional[str] = None) -> AssumptionCheck:
    logger.info("assumption %s: %s (%s)", name, status.value, evidence)
    return AssumptionCheck(name=name, status=status, evidence=evidence, witness=witness)


def _describe_points(system: ZeroDimensionalSystem, limit: int = 3) -> str:
    boxes = system.real_boxes()
    if boxes:
        shown = ", ".join(str(tuple(str(x) for x in b.midpoint)) for b in boxes[:limit])
        return f"{system.real_count} real point(s) near {shown}"
    return f"{system.distinct_count} complex point(s), none real"


def _section_supports_dimension(variety: VarietySpec, rng: random.Random) -> bool:
    """Cut V by d random hyperplanes and ask for a finite nonempty section."""
    section = variety.ideal
    for _ in range(variety.dimension):
        normal = [rng.randint(-9, 9) or 1 for _ in range(variety.n)]
        section = hyperplane_section(section, normal, rng.randint(-9, 9))
    return krull_dimension(section) == 0


def check_assumption_A(variety: VarietySpec) -> AssumptionCheck:
    """V is d-equidimensional with finitely many singular points."""
    settings = variety.settings
    dimension = krull_dimension(variety.ideal)
    if dimension == -1:
        return _check("A", VERIFIED, "V is empty")
    if dimension != variety.dimension:
        return _check(
            "A", VIOLATED,
            f"krull dimension {dimension} differs from the claimed dimension {variety.dimension}",
            witness=f"dim <{', '.join(variety.ideal.generator_strings())}> = {dimension}",
        )
    sing = singular_ideal(variety)
    if sing.is_unit():
        if variety.is_complete_intersection:
            return _check("A", VERIFIED, "complete intersection of the right dimension; the singular system has no solution")
        if _section_supports_dimension(variety, random.Random(settings.seed)):
            return _check("A", PROBABLY, "no singular point; random hyperplane sections support the dimension")
        return _check("A", UNVERIFIED, "no singular point, but equidimensionality is not certified")
    sing_dimension = krull_dimension(sing)
    if sing_dimension > 0:
        return _check(
            "A", UNVERIFIED,
            f"the singular system has dimension {sing_dimension}; the generators may not be radical",
        )
    system = ZeroDimensionalSystem(sing, settings)
    points = _describe_points(system)
    witness = ", ".join(sing.generator_strings())
    if variety.is_complete_intersection:
        return _check("A", VERIFIED, f"complete intersection of the right dimension; finite singular locus: {points}", witness=witness)
    if _section_supports_dimension(variety, random.Random(settings.seed)):
        return _check("A", PROBABLY, f"finite singular locus: {points}; random hyperplane sections support the dimension", witness=witness)
    return _check("A", UNVERIFIED, f"finite singular locus: {points}, but equidimensionality is not certified", witness=witness)


def check_assumption_P(phi: PolyMap) -> AssumptionCheck:
    """phi_1 is proper and bounded below; only the squared-distance shape is recognised."""
    center = phi.squared_distance_center()
    if center is None:
        return _check("P", UNVERIFIED, f"phi_1 = {phi.first} is not a squared distance to a point")
    shown = ", ".join(str(a) for a in center)
    return _check("P", VERIFIED, f"phi_1 is the squared distance to ({shown})")


def check_assumption_B1(variety: VarietySpec, locus: CriticalLocus) -> AssumptionCheck:
    """W_i is (i - 1)-equidimensional and smooth outside sing(V)."""
    i = locus.prefix
    w = locus.w_ideal
    dimension = krull_dimension(w)
    if dimension == -1:
        return _check("B1", VERIFIED, f"W_{i} is empty")
    if dimension != i - 1:
        return _check(
            "B1", VIOLATED,
            f"dim W_{i} = {dimension}, expected {i - 1}",
            witness=f"dim <{', '.join(w.generator_strings())}> = {dimension}",
        )
    w_variety = locus.as_variety(i - 1)
    if w_variety.p < w_variety.codimension:
        return _check("B1", UNVERIFIED, f"W_{i} has fewer generators than its codimension")
    sing_w = singular_ideal(w_variety)
    exact = w_variety.is_complete_intersection
    status = VERIFIED if exact else PROBABLY
    if sing_w.is_unit():
        return _check("B1", status, f"dim W_{i} = {i - 1} and W_{i} has no singular point")
    if all(radical_contains(sing_w, h) for h in locus.sing_ideal.generators):
        return _check("B1", status, f"dim W_{i} = {i - 1}; its singular points lie in sing(V)")
    if krull_dimension(sing_w) == 0:
        system = ZeroDimensionalSystem(sing_w, variety.settings)
        return _check(
            "B1", VIOLATED if exact else UNVERIFIED,
            f"W_{i} has singular points outside sing(V): {_describe_points(system)}",
            witness=", ".join(sing_w.generator_strings()),
        )
    return _check("B1", UNVERIFIED, f"the singular system of W_{i} is positive dimensional")


def _fiber_values(variety: VarietySpec, phi: PolyMap, k: int, samples: int, rng: random.Random) -> List[Tuple[Fraction, ...]]:
    values = [tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 4)) for _ in range(k)) for _ in range(samples)]
    if variety.p == 1:
        # images of real points of V found on random lines
        prefix = phi.prefix(k)
        for _ in range(4 * samples):
            if len(values) >= 2 * samples:
                break
            base, direction = random_line(rng, variety.n, 2)
            for point in line_section(variety.generators, base, direction, Fraction(1, 2 ** 10)):
                values.append(tuple(c.evaluate(point) for c in prefix.components))
                break
    return values


def check_assumption_B2(variety: VarietySpec, phi: PolyMap, i: int, samples: int, seed: int) -> AssumptionCheck:
    """Fibers of phi^(i-1) on V are empty or (d - i + 1)-equidimensional."""
    k = i - 1
    expected = variety.dimension - i + 1
    rng = random.Random(seed)
    values = _fiber_values(variety, phi, k, samples, rng)
    for value in values:
        fiber = fiber_ideal(FiberSpec(variety, phi, k, value))
        dimension = krull_dimension(fiber)
        if dimension not in (-1, expected):
            shown = ", ".join(str(v) for v in value)
            return _check(
                "B2", VIOLATED,
                f"the fiber over ({shown}) has dimension {dimension}, expected {expected}",
                witness=f"phi^({k}) = ({shown})",
            )
    return _check("B2", PROBABLY, f"{len(values)} sampled fibers of phi^({k}) are empty or of dimension {expected}")


def check_assumption_B(
    variety: VarietySpec,
    phi: PolyMap,
    i: int,
    samples: int,
    seed: int,
    locus: Optional[CriticalLocus] = None,
) -> Tuple[AssumptionCheck, AssumptionCheck]:
    if not 2 <= i <= variety.dimension:
        raise InvalidInputError("the roadmap index must satisfy 2 <= i <= d", i=i, d=variety.dimension)
    locus = locus or critical_ideal(variety, phi, i)
    return check_assumption_B1(variety, locus), check_assumption_B2(variety, phi, i, samples, seed)


def check_assumptions(
    variety: VarietySpec,
    phi: PolyMap,
    i: int,
    settings: Optional[EngineSettings] = None,
    locus: Optional[CriticalLocus] = None,
) -> AssumptionReport:
    """(A), (P), (B1) and (B2); (C1) and (C2) are settled by the sample-set computation."""
    settings = settings or variety.settings
    b1, b2 = check_assumption_B(variety, phi, i, settings.fiber_samples, settings.seed, locus)
    report = AssumptionReport()
    for check in (check_assumption_A(variety), check_assumption_P(phi), b1, b2):
        report = report.with_check(check)
    caveat = not singular_ideal(variety).is_unit()
    return report.model_copy(update={"ideal_caveat": caveat})
