import pytest

from polar_roadmap.common.errors import DimensionMismatchError, InvalidInputError
from polar_roadmap.geometry.critical import (
    LEADING_FORMS,
    TRAILING_FORMS,
    FiberSpec,
    VarietySpec,
    critical_ideal,
    critical_points_ideal,
    fiber_ideal,
    jacobian,
    match_polar_generator,
    polar_minor_size,
    singular_ideal,
)
from polar_roadmap.geometry.maps import PolyMap
from polar_roadmap.groebner.operations import krull_dimension
from polar_roadmap.polyring.parser import parse_poly
from polar_roadmap.polyring.poly import Poly
from polar_roadmap.zerodim.solve import ZeroDimensionalSystem


def plane_curve(ring2, source):
    return VarietySpec(ring2, (parse_poly(source, ring2),), 1)


class TestSingularLocus:
    """Test cases for singular ideals."""

    def test_smooth_cubic(self, cubic):
        """Test that the cubic surface has no singular point."""
        assert singular_ideal(cubic).is_unit()

    def test_nodal_cubic(self, ring2):
        """Test that the node of y^2 = x^2 (x + 1) is its only singular point."""
        sing = singular_ideal(plane_curve(ring2, "x2^2 - x1^2*(x1 + 1)"))
        assert not sing.is_unit()
        assert sing.contains(Poly.var(ring2, 0))
        assert sing.contains(Poly.var(ring2, 1))

    def test_too_few_generators(self, ring3):
        """Test a claimed dimension the generators cannot reach."""
        variety = VarietySpec(ring3, (parse_poly("x1", ring3),), 1)
        with pytest.raises(InvalidInputError):
            singular_ideal(variety)


class TestCriticalLoci:
    """Test cases for critical loci and polar varieties."""

    def test_sphere_critical_points(self, sphere, ring3):
        """Test that x1 has the two poles (+-1, 0, 0) as critical points on the sphere."""
        locus = critical_points_ideal(sphere, Poly.var(ring3, 0))
        assert locus.minor_size == 2
        assert not locus.has_singular_points
        system = ZeroDimensionalSystem(locus.w_ideal)
        assert (system.distinct_count, system.real_count) == (2, 2)

    def test_cylinder_critical_lines(self, ring3):
        """Test that x1 on the cylinder is critical along two vertical lines."""
        cylinder = VarietySpec(ring3, (parse_poly("x1^2 + x2^2 - 1", ring3),), 2)
        locus = critical_points_ideal(cylinder, Poly.var(ring3, 0))
        assert krull_dimension(locus.w_ideal) == 1
        assert locus.w_ideal.contains(Poly.var(ring3, 1))

    def test_singular_point_is_removed(self, ring2):
        """Test that W drops the node and keeps the regular critical point (-1, 0)."""
        curve = plane_curve(ring2, "x2^2 - x1^2*(x1 + 1)")
        locus = critical_points_ideal(curve, Poly.var(ring2, 0))
        assert locus.has_singular_points
        expected = curve.ideal.derive([parse_poly("x1 + 1", ring2), parse_poly("x2", ring2)])
        assert locus.w_ideal.equals(expected)
        assert locus.k_ideal.contains(parse_poly("x2", ring2))

    def test_cusp_has_no_regular_critical_point(self, ring2):
        """Test that W is empty when every critical point is singular."""
        locus = critical_points_ideal(plane_curve(ring2, "x1^2 - x2^3"), Poly.var(ring2, 1))
        assert locus.w_ideal.is_unit()

    def test_cubic_polar_determinant(self, cubic, cubic_map, printed_w2, ring3):
        """Test the single 3x3 minor against the hand-computed generator."""
        rows = list(cubic.generators) + list(cubic_map.prefix(2).components)
        minors = jacobian(rows, ring3).minors(3)
        assert minors == [-2 * printed_w2]
        locus = critical_ideal(cubic, cubic_map, 2)
        assert locus.minor_size == polar_minor_size(cubic, 2) == 3
        assert locus.w_ideal.equals(cubic.ideal.with_generators([printed_w2]))

    def test_prefix_out_of_range(self, cubic, cubic_map):
        """Test that i must lie in 1..min(n, m)."""
        with pytest.raises(InvalidInputError):
            critical_ideal(cubic, cubic_map, 0)
        with pytest.raises(InvalidInputError):
            critical_ideal(cubic, cubic_map.prefix(1), 2)

    def test_full_prefix_is_everything(self, sphere, ring3):
        """Test that a minor size above n makes every point critical."""
        phi = PolyMap(ring3, tuple(Poly.gens(ring3)))
        locus = critical_ideal(sphere, phi, 3)
        assert locus.w_ideal.equals(sphere.ideal)


class TestPolarMatch:
    """Test cases for comparing a printed polar generator with both readings of phi."""

    def test_leading_forms_match(self, cubic, cubic_map, printed_w2):
        """Test that the printed generator is the polar ideal of (phi_1, x2)."""
        match = match_polar_generator(cubic, cubic_map, 2, printed_w2)
        assert match.matches == {LEADING_FORMS: True, TRAILING_FORMS: False}
        assert match.matched == LEADING_FORMS

    def test_trailing_forms_determinant(self, cubic, cubic_map, ring3):
        """Test the other reading against its hand-computed generator 2 (x2 - x3)(3 x2 x3 + 1)."""
        match = match_polar_generator(cubic, cubic_map, 2, parse_poly("(x2 - x3)*(3*x2*x3 + 1)", ring3))
        assert match.matched == TRAILING_FORMS


class TestFibers:
    """Test cases for fibers of a map restricted to V."""

    def test_fiber_ideal(self, sphere, ring3):
        """Test that the fiber of x1 = 0 on the sphere is a circle."""
        phi = PolyMap(ring3, (Poly.var(ring3, 0),))
        ideal = fiber_ideal(FiberSpec(sphere, phi, 1, (0,)))
        assert ideal.contains(parse_poly("x2^2 + x3^2 - 1", ring3))
        assert krull_dimension(ideal) == 1

    def test_value_length(self, sphere, ring3):
        """Test that the fiber value matches the prefix."""
        phi = PolyMap(ring3, (Poly.var(ring3, 0),))
        with pytest.raises(DimensionMismatchError):
            FiberSpec(sphere, phi, 1, (0, 1))
