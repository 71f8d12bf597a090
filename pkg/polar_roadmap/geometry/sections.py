"""
Rational line and hyperplane sections of algebraic sets.
"""
from fractions import Fraction
from functools import reduce
import logging
import random
from typing import List, Sequence, Tuple

from polar_roadmap.common.errors import DimensionMismatchError
from polar_roadmap.groebner.ideal import Ideal
from polar_roadmap.polyring.poly import Poly
from polar_roadmap.polyring.ring import PolyRing
from polar_roadmap.zerodim import univariate

logger = logging.getLogger(__name__)

LINE_RING = PolyRing(("t",))

Point = Tuple[Fraction, ...]


def restrict_to_line(p: Poly, base: Sequence, direction: Sequence) -> List[Fraction]:
    """Coefficients of t -> p(base + t * direction), lowest degree first."""
    if len(base) != p.ring.nvars or len(direction) != p.ring.nvars:
        raise DimensionMismatchError("line does not live in the polynomial's ring", nvars=p.ring.nvars)
    t = Poly.var(LINE_RING, 0)
    values = [Fraction(b) + Fraction(d) * t for b, d in zip(base, direction)]
    return p.compose(values).univariate_coefficients(0)


def line_section(polys: Sequence[Poly], base: Sequence, direction: Sequence, width: Fraction) -> List[Point]:
    """
    Real points of V(polys) on the line base + t * direction, each given by
    the midpoint of a root interval of width at most ``width`` in t.
    """
    restricted = [univariate.trim(restrict_to_line(p, base, direction)) for p in polys]
    restricted = [c for c in restricted if c]
    if not restricted:
        logger.debug("line lies inside the variety, skipped")
        return []
    common = reduce(univariate.gcd_q, restricted)
    if univariate.degree(common) < 1:
        return []
    points = []
    for iv in univariate.real_roots(common, width):
        t = iv.midpoint
        points.append(tuple(Fraction(b) + t * Fraction(d) for b, d in zip(base, direction)))
    return points


def random_line(rng: random.Random, n: int, radius: int) -> Tuple[Point, Point]:
    """A base point in the box [-radius, radius]^n with denominator 64 and a nonzero integer direction."""
    base = tuple(Fraction(rng.randint(-64 * radius, 64 * radius), 64) for _ in range(n))
    direction = (0,) * n
    while not any(direction):
        direction = tuple(rng.randint(-9, 9) for _ in range(n))
    return base, tuple(Fraction(d) for d in direction)


def hyperplane_section(ideal: Ideal, normal: Sequence, offset) -> Ideal:
    """I + <normal . x - offset>."""
    ring = ideal.ring
    form = sum((Fraction(c) * Poly.var(ring, k) for k, c in enumerate(normal) if c), Poly.zero(ring))
    return ideal.with_generators([form - Fraction(offset)])
