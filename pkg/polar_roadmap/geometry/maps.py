"""
Polynomial maps phi = (phi_1, ..., phi_m) on a ring and the families used
to sweep varieties: coordinate projections and the squared distance to a
center followed by generic integer linear forms.
"""
from dataclasses import dataclass
from fractions import Fraction
import logging
import random
from typing import List, Optional, Sequence, Tuple, Union

from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from polar_roadmap.common.config import DEFAULT_SETTINGS
from polar_roadmap.common.errors import DegenerateDrawError, DimensionMismatchError, InvalidInputError, RingMismatchError
from polar_roadmap.polyring.matrix import rational_rank
from polar_roadmap.polyring.poly import Poly
from polar_roadmap.polyring.ring import PolyRing

logger = logging.getLogger(__name__)

# Linear-form coefficients are drawn from [-COEFFICIENT_BOUND, COEFFICIENT_BOUND].
COEFFICIENT_BOUND = 9


@dataclass(frozen=True)
class PolyMap:
    ring: PolyRing
    components: Tuple[Poly, ...]

    def __post_init__(self):
        if len(self.components) > self.ring.nvars:
            raise DimensionMismatchError(
                "a map has at most as many components as the ring has variables",
                components=len(self.components), nvars=self.ring.nvars,
            )
        for c in self.components:
            if c.ring != self.ring:
                raise RingMismatchError("map component belongs to a different ring", component=str(c))

    @classmethod
    def from_polys(cls, polys: Sequence[Poly]) -> "PolyMap":
        if not polys:
            raise InvalidInputError("a map needs at least one component")
        return cls(polys[0].ring, tuple(polys))

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, index: int) -> Poly:
        return self.components[index]

    @property
    def first(self) -> Poly:
        return self.components[0]

    def prefix(self, i: int) -> "PolyMap":
        """phi^(i) = (phi_1, ..., phi_i)."""
        if not 0 <= i <= len(self.components):
            raise InvalidInputError("prefix length out of range", i=i, components=len(self.components))
        return PolyMap(self.ring, self.components[:i])

    def with_reversed_forms(self) -> "PolyMap":
        """phi_1 followed by phi_2, ..., phi_m in reverse order."""
        if not self.components:
            return self
        return PolyMap(self.ring, (self.components[0],) + tuple(reversed(self.components[1:])))

    def image_ring(self, i: Optional[int] = None) -> PolyRing:
        """Q[y1, ..., yi] for polynomials in the values of phi^(i)."""
        i = len(self.components) if i is None else i
        return PolyRing(tuple(f"y{j}" for j in range(1, i + 1)))

    def compose(self, p: Poly, i: Optional[int] = None) -> Poly:
        """P(phi_1, ..., phi_i) for P in the image variables y1..yi."""
        i = p.ring.nvars if i is None else i
        if p.ring.nvars != i:
            raise DimensionMismatchError("image polynomial has the wrong number of variables", expected=i, got=p.ring.nvars)
        if i == 0:
            return Poly.constant(self.ring, p.constant_value() if not p.is_zero() else 0)
        return p.compose(list(self.prefix(i).components))

    def evaluate(self, point: Sequence) -> List:
        return [c.evaluate(point) for c in self.components]

    def squared_distance_center(self) -> Optional[Tuple[Fraction, ...]]:
        """
        The center a when phi_1 is exactly sum (x_k - a_k)^2 over every
        variable, otherwise ``None``.
        """
        if not self.components:
            return None
        phi1 = self.components[0]
        n = self.ring.nvars
        center = [Fraction(0)] * n
        squares = 0
        constant = Fraction(0)
        for m, c in phi1.terms.items():
            degree = sum(m)
            if degree == 2:
                k = next(idx for idx, e in enumerate(m) if e)
                if m[k] != 2 or c != 1:
                    return None
                squares += 1
            elif degree == 1:
                k = next(idx for idx, e in enumerate(m) if e)
                center[k] = -c / 2
            elif degree == 0:
                constant = c
            else:
                return None
        if squares != n or constant != sum(a * a for a in center):
            return None
        return tuple(center)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def _as_ring(ring: Union[PolyRing, int]) -> PolyRing:
    return PolyRing.standard(ring) if isinstance(ring, int) else ring


def projection_map(ring: Union[PolyRing, int]) -> PolyMap:
    """phi = (x1, ..., xn)."""
    ring = _as_ring(ring)
    return PolyMap(ring, tuple(Poly.gens(ring)))


def squared_distance(ring: PolyRing, center: Sequence) -> Poly:
    if len(center) != ring.nvars:
        raise DimensionMismatchError("center length does not match the ring", expected=ring.nvars, got=len(center))
    total = Poly.zero(ring)
    for k, a in enumerate(center):
        diff = Poly.var(ring, k) - Fraction(a)
        total = total + diff * diff
    return total


def linear_form(ring: PolyRing, row: Sequence[int]) -> Poly:
    return sum((c * Poly.var(ring, k) for k, c in enumerate(row) if c), Poly.zero(ring))


def build_phi(
    ring: Union[PolyRing, int],
    center: Sequence,
    seed: int = DEFAULT_SETTINGS.seed,
    forms: Optional[Sequence[Sequence[int]]] = None,
    max_redraws: int = DEFAULT_SETTINGS.max_redraws,
) -> PolyMap:
    """
    phi_1 = sum (x_k - a_k)^2 followed by n - 1 linearly independent integer
    linear forms, drawn from ``seed`` unless ``forms`` fixes them.
    """
    ring = _as_ring(ring)
    n = ring.nvars
    phi1 = squared_distance(ring, [Fraction(a) for a in center])

    if forms is not None:
        rows = [list(r) for r in forms]
        if len(rows) != n - 1 or any(len(r) != n for r in rows):
            raise DimensionMismatchError("expected n - 1 linear forms of length n", n=n, forms=len(rows))
        if n > 1 and rational_rank([[Fraction(c) for c in r] for r in rows]) != n - 1:
            raise InvalidInputError("the given linear forms are linearly dependent")
        return PolyMap(ring, (phi1,) + tuple(linear_form(ring, r) for r in rows))

    rng = random.Random(seed)

    def draw() -> List[List[int]]:
        rows = [[rng.randint(-COEFFICIENT_BOUND, COEFFICIENT_BOUND) for _ in range(n)] for _ in range(n - 1)]
        if n > 1 and rational_rank([[Fraction(c) for c in r] for r in rows]) != n - 1:
            logger.debug("drew dependent linear forms, redrawing")
            raise DegenerateDrawError("linear forms are dependent", rows=str(rows))
        return rows

    for attempt in Retrying(
        stop=stop_after_attempt(max_redraws),
        retry=retry_if_exception_type(DegenerateDrawError),
        reraise=True,
    ):
        with attempt:
            rows = draw()
    logger.info("built map with linear forms %s (seed %d)", rows, seed)
    return PolyMap(ring, (phi1,) + tuple(linear_form(ring, r) for r in rows))
