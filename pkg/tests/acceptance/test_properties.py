from fractions import Fraction
from itertools import combinations
import random

import pytest

from polar_roadmap.groebner.ideal import Ideal
from polar_roadmap.polyring.matrix import PolyMatrix
from polar_roadmap.polyring.parser import parse_poly
from polar_roadmap.polyring.poly import Poly
from polar_roadmap.polyring.ring import PolyRing
from polar_roadmap.zerodim import univariate
from polar_roadmap.zerodim.solve import ZeroDimensionalSystem, count_real_solutions, isolate_univariate_roots, solve_real

pytestmark = pytest.mark.slow


def random_poly(rng: random.Random, ring: PolyRing, degree: int, terms: int) -> Poly:
    n = ring.nvars
    out = Poly.zero(ring)
    for _ in range(terms):
        total = rng.randint(0, degree)
        cuts = sorted(rng.randint(0, total) for _ in range(n - 1))
        exponents = tuple(b - a for a, b in zip([0] + cuts, cuts + [total]))
        out = out + Poly.monomial(ring, exponents, rng.choice([-3, -2, -1, 1, 2, 3]))
    return out


def s_polynomial(f: Poly, g: Poly) -> Poly:
    mf, mg = f.leading_monomial(), g.leading_monomial()
    lcm = tuple(max(a, b) for a, b in zip(mf, mg))
    left = f.mul_term(tuple(a - b for a, b in zip(lcm, mf)), 1 / f.leading_coefficient())
    right = g.mul_term(tuple(a - b for a, b in zip(lcm, mg)), 1 / g.leading_coefficient())
    return left - right


def random_scaled_poly(rng: random.Random, ring: PolyRing, degree: int, terms: int) -> Poly:
    return random_poly(rng, ring, degree, terms) * Fraction(rng.randint(1, 5), rng.randint(1, 7))


def random_substitution(rng: random.Random, ring: PolyRing):
    """An invertible integer linear change of coordinates of a two-variable ring."""
    x1, x2 = Poly.gens(ring)
    while True:
        a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
        if a * d - b * c:
            return [a * x1 + b * x2, c * x1 + d * x2]


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def random_ideals(count: int):
    rng = random.Random(2024)
    for _ in range(count):
        ring = PolyRing.standard(rng.randint(1, 3))
        gens = [random_poly(rng, ring, 3, rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if not g.is_zero()] or [Poly.var(ring, 0)]
        yield rng, ring, gens


class TestGroebnerProperties:
    """Random ideals in at most three variables."""

    def test_reduced_bases(self):
        """Test S-pair closure, membership and generator order invariance on 200 ideals."""
        for rng, ring, gens in random_ideals(200):
            basis = Ideal(ring, gens).groebner_basis()
            elements = list(basis.elements)
            for f, g in combinations(elements, 2):
                assert basis.normal_form(s_polynomial(f, g)).is_zero()
            for g in gens:
                assert basis.normal_form(g).is_zero()
            shuffled = list(gens)
            rng.shuffle(shuffled)
            assert set(Ideal(ring, shuffled).groebner_basis().elements) == set(elements)


class TestCountingProperties:
    """Hermite counts against Sturm counts."""

    def test_hermite_agrees_with_sturm(self):
        """Test real root counts of 100 squarefree polynomials of degree at most 8."""
        rng = random.Random(8)
        ring = PolyRing.standard(1)
        checked = 0
        while checked < 100:
            coeffs = univariate.squarefree([rng.randint(-9, 9) for _ in range(rng.randint(2, 9))])
            if univariate.degree(coeffs) < 1:
                continue
            system = ZeroDimensionalSystem(Ideal(ring, [Poly.from_univariate(ring, 0, coeffs)]))
            assert system.distinct_count == univariate.degree(coeffs)
            assert system.real_count == univariate.sturm_count(coeffs)
            roots = isolate_univariate_roots(Poly.from_univariate(ring, 0, coeffs))
            assert len(roots) == system.real_count
            assert all(left.hi < right.lo for left, right in zip(roots, roots[1:]))
            checked += 1


class TestMinorProperties:
    """Laplace expansion puts every k-minor in the ideal of (k-1)-minors."""

    def test_minor_containment(self):
        """Test 50 random polynomial matrices up to 4 x 4."""
        rng = random.Random(50)
        ring = PolyRing.standard(2)
        for _ in range(50):
            rows, cols = rng.randint(2, 4), rng.randint(2, 4)
            matrix = PolyMatrix.from_rows(ring, [[random_poly(rng, ring, 1, 2) for _ in range(cols)] for _ in range(rows)])
            for k in range(2, min(rows, cols) + 1):
                lower = Ideal(ring, matrix.minors(k - 1))
                for minor in matrix.minors(k):
                    assert lower.contains(minor)


class TestPolynomialProperties:
    """Random polynomials in one to three variables."""

    def test_ring_axioms(self):
        """Test commutativity, associativity and distributivity on 200 triples."""
        rng = random.Random(31)
        for _ in range(200):
            ring = PolyRing.standard(rng.randint(1, 3))
            a, b, c = (random_scaled_poly(rng, ring, 3, 3) for _ in range(3))
            assert a + b == b + a
            assert a * b == b * a
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert (a - a).is_zero()

    def test_product_rule(self):
        """Test the derivative of a product in every variable on 200 pairs."""
        rng = random.Random(32)
        for _ in range(200):
            ring = PolyRing.standard(rng.randint(1, 3))
            a, b = random_scaled_poly(rng, ring, 4, 4), random_scaled_poly(rng, ring, 4, 4)
            for k in range(ring.nvars):
                assert (a * b).derivative(k) == a.derivative(k) * b + a * b.derivative(k)

    def test_printed_form_parses_back(self):
        """Test that the printed form of 200 polynomials with rational coefficients parses to the same polynomial."""
        rng = random.Random(33)
        for _ in range(200):
            ring = PolyRing.standard(rng.randint(1, 3))
            p = random_scaled_poly(rng, ring, 5, 5)
            assert parse_poly(str(p), ring) == p

    def test_combinations_reduce_to_zero(self):
        """Test that polynomial combinations of the generators have normal form zero."""
        for rng, ring, gens in random_ideals(100):
            basis = Ideal(ring, gens).groebner_basis()
            combination = Poly.zero(ring)
            for g in gens:
                combination = combination + random_poly(rng, ring, 2, 2) * g
            remainder = random_poly(rng, ring, 3, 3)
            assert basis.normal_form(combination).is_zero()
            assert basis.normal_form(combination + remainder) == basis.normal_form(remainder)


def random_zero_dimensional_systems(count: int, seed: int):
    rng = random.Random(seed)
    ring = PolyRing.standard(2)
    found = 0
    while found < count:
        gens = [random_poly(rng, ring, 2, rng.randint(2, 4)) for _ in range(2)]
        if any(g.is_zero() for g in gens):
            continue
        system = ZeroDimensionalSystem(Ideal(ring, gens))
        if system.is_empty or system.dimension != 0:
            continue
        found += 1
        yield rng, ring, gens, system


class TestQuotientProperties:
    """Random zero-dimensional systems of two equations in two variables."""

    def test_multiplication_matrices_commute(self):
        """Test that multiplication by x1 and by x2 commute in 40 quotients."""
        for _, _, _, system in random_zero_dimensional_systems(40, 41):
            m1 = system.algebra.multiplication_matrix(0)
            m2 = system.algebra.multiplication_matrix(1)
            assert matmul(m1, m2) == matmul(m2, m1)

    def test_trace_form_bounds(self):
        """Test |signature| <= rank <= dimension of the quotient for 40 systems."""
        for _, _, _, system in random_zero_dimensional_systems(40, 42):
            form = system.trace_form
            assert abs(form.signature()) <= form.rank() <= system.multiplicity_count
            assert form.size == system.multiplicity_count

    def test_counts_survive_linear_change_of_coordinates(self):
        """Test that all three solution counts are unchanged by an invertible linear substitution."""
        for rng, ring, gens, system in random_zero_dimensional_systems(30, 43):
            substitution = random_substitution(rng, ring)
            moved = ZeroDimensionalSystem(Ideal(ring, [g.compose(substitution) for g in gens]))
            assert moved.multiplicity_count == system.multiplicity_count
            assert moved.distinct_count == system.distinct_count
            assert moved.real_count == system.real_count


class TestRealSolutionProperties:
    """Sheared grids of rational points."""

    def test_boxes_are_disjoint_and_counted(self):
        """Test that real boxes are pairwise disjoint and match the Hermite count on 20 grids."""
        rng = random.Random(51)
        ring = PolyRing.standard(2)
        x1, x2 = Poly.gens(ring)
        width = Fraction(1, 2 ** 20)
        for _ in range(20):
            f, g = Poly.one(ring), Poly.one(ring)
            firsts = rng.sample(range(-4, 5), rng.randint(1, 3))
            seconds = rng.sample(range(-4, 5), rng.randint(1, 3))
            for r in firsts:
                f = f * (x1 - r)
            for s in seconds:
                g = g * (x2 - s)
            substitution = random_substitution(rng, ring)
            ideal = Ideal(ring, [f.compose(substitution), g.compose(substitution)])
            boxes = solve_real(ideal, width)
            assert len(boxes) == count_real_solutions(ideal) == len(firsts) * len(seconds)
            for left, right in combinations(boxes, 2):
                assert not left.overlaps(right)
            for box in boxes:
                assert box.satisfies(ideal.generators)
