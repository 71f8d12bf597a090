"""
Counting and isolating the solutions of zero-dimensional systems.

Counts come from the Hermite trace form: its rank is the number of distinct
complex solutions and its signature the number of distinct real ones. Real
solutions are boxed through a separating linear form (shape position), or,
when no such form is found, through per-coordinate eliminants with interval
pruning and a Krawczyk uniqueness test.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
import logging
import random
from typing import Dict, List, Optional, Sequence, Tuple

from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from polar_roadmap.common.config import DEFAULT_SETTINGS, EngineSettings
from polar_roadmap.common.errors import DegenerateDrawError, InvalidInputError, NotZeroDimensionalError
from polar_roadmap.common.schemas.solutions import BoxStatus, SolutionBoxModel, SolutionSetModel
from polar_roadmap.common.serialization import interval_pair
from polar_roadmap.groebner.ideal import GroebnerBasis, Ideal
from polar_roadmap.groebner.operations import krull_dimension_from_leading
from polar_roadmap.polyring.interval import Interval, box_width
from polar_roadmap.polyring.matrix import rational_inverse, rational_solve
from polar_roadmap.polyring.poly import Poly
from polar_roadmap.zerodim import univariate
from polar_roadmap.zerodim.algebra import QuotientAlgebra, TraceForm

logger = logging.getLogger(__name__)

# Refinement rounds before boxes that still overlap are given up on.
MAX_REFINEMENT_ROUNDS = 400


@dataclass(frozen=True)
class SolutionBox:
    coordinates: Tuple[Interval, ...]
    status: BoxStatus = BoxStatus.CANDIDATE

    @property
    def midpoint(self) -> Tuple[Fraction, ...]:
        return tuple(iv.midpoint for iv in self.coordinates)

    def midpoint_float(self) -> Tuple[float, ...]:
        return tuple(float(x) for x in self.midpoint)

    @property
    def width(self) -> Fraction:
        return box_width(self.coordinates)

    def overlaps(self, other: "SolutionBox") -> bool:
        return all(a.overlaps(b) for a, b in zip(self.coordinates, other.coordinates))

    def satisfies(self, polys: Sequence[Poly]) -> bool:
        """Every polynomial's interval enclosure on the box contains 0."""
        return all(p.evaluate(self.coordinates).contains_zero() for p in polys)

    def evaluate(self, p: Poly) -> Interval:
        return p.evaluate(self.coordinates)

    def to_model(self) -> SolutionBoxModel:
        return SolutionBoxModel(
            coordinates=[interval_pair(iv) for iv in self.coordinates],
            status=self.status,
            midpoint=list(self.midpoint_float()),
        )

    def __str__(self) -> str:
        return "(" + ", ".join(str(iv) for iv in self.coordinates) + ")"


@dataclass(frozen=True)
class SolutionSet:
    ideal: Ideal = field(compare=False)
    multiplicity_count: int
    distinct_count: int
    real_count: int
    real_boxes: Tuple[SolutionBox, ...] = ()

    def __post_init__(self):
        if not self.real_count <= self.distinct_count <= self.multiplicity_count:
            raise InvalidInputError(
                "inconsistent solution counts",
                real=self.real_count, distinct=self.distinct_count, multiplicity=self.multiplicity_count,
            )

    @property
    def is_empty(self) -> bool:
        return self.multiplicity_count == 0

    @property
    def is_radical(self) -> bool:
        return self.multiplicity_count == self.distinct_count

    def to_model(self) -> SolutionSetModel:
        return SolutionSetModel(
            generators=self.ideal.generator_strings(),
            multiplicity_count=self.multiplicity_count,
            distinct_count=self.distinct_count,
            real_count=self.real_count,
            real_boxes=[box.to_model() for box in self.real_boxes],
        )


@dataclass(frozen=True)
class ShapeForm:
    """A separating element u with x_k = R_k(u) in the quotient."""
    u: Poly
    minimal_polynomial: Tuple[Fraction, ...]
    parametrization: Tuple[Tuple[Fraction, ...], ...]


def multiplication_matrix(basis: GroebnerBasis, var: int) -> List[List[Fraction]]:
    return QuotientAlgebra(basis).multiplication_matrix(var)


def isolate_univariate_roots(p: Poly) -> List[Interval]:
    """Isolating intervals of the real roots of a univariate polynomial."""
    if p.is_zero():
        raise InvalidInputError("cannot isolate the roots of the zero polynomial")
    support = p.support()
    if len(support) > 1:
        raise InvalidInputError("polynomial is not univariate", support=str(support))
    if not support:
        return []
    return univariate.isolate_real_roots(p.univariate_coefficients(support[0]))


class ZeroDimensionalSystem:
    """
    Lazily computed invariants of one zero-dimensional ideal. Every property
    is computed once; ``real_boxes`` can be asked for at any width.
    """

    def __init__(self, ideal: Ideal, settings: Optional[EngineSettings] = None):
        self.ideal = ideal
        self.settings = settings or ideal.settings or DEFAULT_SETTINGS
        self.ring = ideal.ring
        self._boxes: Dict[Fraction, Tuple[SolutionBox, ...]] = {}

    @cached_property
    def basis(self) -> GroebnerBasis:
        return self.ideal.groebner_basis()

    @property
    def is_empty(self) -> bool:
        return self.basis.is_unit()

    @cached_property
    def algebra(self) -> QuotientAlgebra:
        if self.ideal.is_zero_ideal:
            raise NotZeroDimensionalError("the zero ideal is not zero-dimensional", dimension=self.ring.nvars)
        return QuotientAlgebra(self.basis)

    @property
    def dimension(self) -> int:
        return krull_dimension_from_leading(self.basis.leading_monomials, self.ring.nvars)

    @cached_property
    def trace_form(self) -> TraceForm:
        return self.algebra.trace_form()

    @cached_property
    def _inertia(self) -> Tuple[int, int]:
        if self.is_empty:
            return 0, 0
        return self.trace_form.inertia(self.settings.signature_method)

    @property
    def multiplicity_count(self) -> int:
        return 0 if self.is_empty else self.algebra.dimension

    @property
    def distinct_count(self) -> int:
        pos, neg = self._inertia
        return pos + neg

    @property
    def real_count(self) -> int:
        pos, neg = self._inertia
        return pos - neg

    def sign_count(self, h: Poly) -> int:
        """#{real roots with h > 0} - #{real roots with h < 0}."""
        if self.is_empty:
            return 0
        return self.algebra.trace_form(h).signature(self.settings.signature_method)

    def count_real_with(self, h: Poly) -> Tuple[int, int, int]:
        """Real roots with h > 0, h < 0 and h = 0."""
        total = self.real_count
        s1 = self.sign_count(h)
        s2 = self.sign_count(h * h)
        positive = (s2 + s1) // 2
        negative = (s2 - s1) // 2
        return positive, negative, total - s2

    def eliminant(self, var: int) -> List[Fraction]:
        """Generator of I cap Q[x_var] (monic, coefficients lowest first)."""
        if self.is_empty:
            return [Fraction(1)]
        return self.algebra.variable_minimal_polynomial(var)

    def image_eliminant(self, h: Poly) -> List[Fraction]:
        """Monic generator of the polynomials P with P(h) in I."""
        if self.is_empty:
            return [Fraction(1)]
        return self.algebra.minimal_polynomial(h)

    # -- shape position ----------------------------------------------------

    def _candidate_forms(self):
        ring = self.ring
        for k in range(ring.nvars):
            yield Poly.var(ring, k)
        rng = random.Random(self.settings.seed)
        while True:
            coeffs = [rng.randint(-9, 9) for _ in range(ring.nvars)]
            if any(coeffs):
                yield sum((c * Poly.var(ring, k) for k, c in enumerate(coeffs) if c), Poly.zero(ring))

    def _try_form(self, u: Poly) -> ShapeForm:
        algebra = self.algebra
        columns = algebra.element_columns(u)
        mu, vectors = algebra.krylov(columns)
        D = algebra.dimension
        if len(mu) - 1 < D:
            raise DegenerateDrawError("linear form does not separate the solutions", form=str(u))
        matrix = [[vec.get(i, Fraction(0)) for vec in vectors] for i in range(D)]
        rhs = []
        for k in range(self.ring.nvars):
            coords = algebra.coordinates(Poly.var(self.ring, k))
            rhs.append([coords.get(i, Fraction(0)) for i in range(D)])
        solution = rational_solve(matrix, rhs)
        if solution is None:
            raise DegenerateDrawError("Krylov basis is singular", form=str(u))
        return ShapeForm(u, tuple(mu), tuple(tuple(col) for col in solution))

    @cached_property
    def shape(self) -> Optional[ShapeForm]:
        if self.is_empty or self.multiplicity_count != self.distinct_count:
            return None
        forms = self._candidate_forms()
        attempts = self.ring.nvars + self.settings.max_redraws
        try:
            for attempt in Retrying(
                stop=stop_after_attempt(attempts),
                retry=retry_if_exception_type(DegenerateDrawError),
                reraise=True,
            ):
                with attempt:
                    form = self._try_form(next(forms))
        except DegenerateDrawError:
            logger.info("no separating linear form found after %d attempts", attempts)
            return None
        logger.debug("separating form %s", form.u)
        return form

    # -- real boxes --------------------------------------------------------

    def real_boxes(self, width: Optional[Fraction] = None) -> Tuple[SolutionBox, ...]:
        width = Fraction(width if width is not None else self.settings.box_width)
        if width <= 0:
            raise InvalidInputError("box width must be positive")
        if width in self._boxes:
            return self._boxes[width]
        if self.is_empty or self.real_count == 0:
            boxes: Tuple[SolutionBox, ...] = ()
        else:
            boxes = None
            if self.shape is not None:
                boxes = self._shape_boxes(self.shape, width)
            if boxes is None:
                boxes = self._eliminant_boxes(width)
        boxes = tuple(sorted(boxes, key=lambda b: b.midpoint))
        self._boxes[width] = boxes
        return boxes

    def _shape_boxes(self, shape: ShapeForm, width: Fraction) -> Optional[Tuple[SolutionBox, ...]]:
        mu = univariate.to_integer(shape.minimal_polynomial)
        roots = univariate.isolate_real_roots(mu)
        if len(roots) != self.real_count:
            logger.warning("shape roots (%d) disagree with the real count (%d)", len(roots), self.real_count)
            return None
        params = shape.parametrization

        def box_for(J: Interval) -> Tuple[Interval, ...]:
            return tuple(univariate.interval_horner(r, J) for r in params)

        intervals = list(roots)
        for _ in range(MAX_REFINEMENT_ROUNDS):
            boxes = [box_for(J) for J in intervals]
            wide = [i for i, b in enumerate(boxes) if box_width(b) > width]
            clashing = {
                idx
                for i, j in combinations(range(len(boxes)), 2)
                if all(a.overlaps(b) for a, b in zip(boxes[i], boxes[j]))
                for idx in (i, j)
            }
            todo = set(wide) | clashing
            if not todo:
                return tuple(SolutionBox(b, BoxStatus.CERTIFIED_UNIQUE) for b in boxes)
            for i in todo:
                J = intervals[i]
                if J.width:
                    intervals[i] = univariate.refine_root(mu, J, J.width / 16)
        logger.warning("shape boxes did not separate after %d rounds", MAX_REFINEMENT_ROUNDS)
        return None

    def _eliminant_boxes(self, width: Fraction) -> Tuple[SolutionBox, ...]:
        gens = list(self.basis.elements)
        per_coordinate = []
        squarefree = []
        for k in range(self.ring.nvars):
            q = univariate.squarefree(self.eliminant(k))
            squarefree.append(q)
            per_coordinate.append(univariate.real_roots(q, width))

        survivors = [tuple(c) for c in product(*per_coordinate) if SolutionBox(tuple(c)).satisfies(gens)]
        current = width
        rounds = 0
        while len(survivors) > self.real_count and rounds < 60:
            rounds += 1
            current = current / 4
            refined = []
            for box in survivors:
                tighter = tuple(univariate.refine_root(q, iv, current) for q, iv in zip(squarefree, box))
                if SolutionBox(tighter).satisfies(gens):
                    refined.append(tighter)
            survivors = refined

        certified = len(survivors) == self.real_count and all(
            krawczyk_certify(self.ideal.generators, box) for box in survivors
        )
        status = BoxStatus.CERTIFIED_UNIQUE if certified else BoxStatus.CANDIDATE
        if not certified:
            logger.info("eliminant boxes left as candidates (%d boxes, %d real solutions)", len(survivors), self.real_count)
        return tuple(SolutionBox(box, status) for box in survivors)

    def solution_set(self, width: Optional[Fraction] = None) -> SolutionSet:
        return SolutionSet(
            ideal=self.ideal,
            multiplicity_count=self.multiplicity_count,
            distinct_count=self.distinct_count,
            real_count=self.real_count,
            real_boxes=self.real_boxes(width),
        )


# -- Krawczyk ----------------------------------------------------------------

def _limit(x: Fraction, bits: int = 64) -> Fraction:
    return Fraction(x).limit_denominator(2 ** bits)


def krawczyk_certify(polys: Sequence[Poly], box: Sequence[Interval]) -> bool:
    """
    True when some square subsystem of ``polys`` has a Krawczyk operator
    mapping the box strictly inside itself (a unique zero of that subsystem
    in the box). Tries the box as given and inflated around its midpoint.
    """
    n = len(box)
    polys = list(polys)
    if len(polys) < n:
        return False
    center = [iv.midpoint for iv in box]
    for subset in combinations(range(len(polys)), n):
        system = [polys[i] for i in subset]
        jac_center = [[p.derivative(k).evaluate(center) for k in range(n)] for p in system]
        inverse = rational_inverse(jac_center)
        if inverse is None:
            continue
        inverse = [[_limit(x) for x in row] for row in inverse]
        for inflate in (1, 2, 8):
            candidate = [Interval.around(c, max(iv.width, Fraction(1, 2 ** 60)) * inflate / 2) for c, iv in zip(center, box)]
            if _krawczyk_contracts(system, candidate, center, inverse):
                return True
    return False


def _krawczyk_contracts(system: Sequence[Poly], box: Sequence[Interval], center: Sequence[Fraction], Y) -> bool:
    n = len(box)
    f_center = [p.evaluate(center) for p in system]
    jac_box = [[p.derivative(k).evaluate(box) for k in range(n)] for p in system]
    for i in range(n):
        value = Interval.point(center[i] - sum(Y[i][j] * f_center[j] for j in range(n)))
        for j in range(n):
            coefficient = Interval.point(1 if i == j else 0)
            for l in range(n):
                coefficient = coefficient - jac_box[l][j] * Y[i][l]
            value = value + coefficient * (box[j] - center[j])
        if not box[i].strictly_contains(value):
            return False
    return True


# -- functional API ------------------------------------------------------------

def count_solutions(ideal: Ideal) -> Tuple[int, int]:
    """(count with multiplicity, distinct count)."""
    system = ZeroDimensionalSystem(ideal)
    return system.multiplicity_count, system.distinct_count


def count_real_solutions(ideal: Ideal) -> int:
    return ZeroDimensionalSystem(ideal).real_count


def solve_real(ideal: Ideal, width: Optional[Fraction] = None) -> List[SolutionBox]:
    return list(ZeroDimensionalSystem(ideal).real_boxes(width))


def count_real_solutions_with_sign(ideal: Ideal, h: Poly) -> Tuple[int, int, int]:
    """Distinct real solutions with h > 0, h < 0 and h = 0."""
    return ZeroDimensionalSystem(ideal).count_real_with(h)


def trace_form(ideal: Ideal) -> TraceForm:
    return ZeroDimensionalSystem(ideal).trace_form


__all__ = [
    "BoxStatus",
    "ShapeForm",
    "SolutionBox",
    "SolutionSet",
    "ZeroDimensionalSystem",
    "count_real_solutions",
    "count_real_solutions_with_sign",
    "count_solutions",
    "isolate_univariate_roots",
    "krawczyk_certify",
    "multiplication_matrix",
    "solve_real",
    "trace_form",
]
