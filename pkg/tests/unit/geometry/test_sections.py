from fractions import Fraction
import random

from polar_roadmap.geometry.sections import hyperplane_section, line_section, random_line, restrict_to_line
from polar_roadmap.groebner.operations import krull_dimension
from polar_roadmap.polyring.parser import parse_poly


class TestLineSections:
    """Test cases for intersecting varieties with rational lines."""

    def test_restrict_to_line(self, ring2):
        """Test the univariate restriction of the circle to the x1 axis."""
        circle = parse_poly("x1^2 + x2^2 - 1", ring2)
        assert restrict_to_line(circle, (0, 0), (1, 0)) == [-1, 0, 1]
        assert restrict_to_line(circle, (0, 1), (1, 0)) == [0, 0, 1]

    def test_diagonal_meets_circle_twice(self, ring2):
        """Test that the diagonal meets the unit circle near +-(1/sqrt 2, 1/sqrt 2)."""
        circle = parse_poly("x1^2 + x2^2 - 1", ring2)
        points = line_section([circle], (0, 0), (1, 1), Fraction(1, 2 ** 40))
        assert len(points) == 2
        for x1, x2 in points:
            assert x1 == x2
            assert abs(float(x1) ** 2 - 0.5) < 1e-10

    def test_common_roots_only(self, ring2):
        """Test that every polynomial must vanish at a returned point."""
        polys = [parse_poly("x1^2 + x2^2 - 1", ring2), parse_poly("x1 - x2", ring2)]
        points = line_section(polys, (0, 0), (1, 0), Fraction(1, 2 ** 20))
        assert points == []

    def test_missing_line(self, ring2):
        """Test a line that misses the circle."""
        circle = parse_poly("x1^2 + x2^2 - 1", ring2)
        assert line_section([circle], (0, 2), (1, 0), Fraction(1, 1024)) == []

    def test_line_inside_variety(self, ring2):
        """Test that a line contained in V gives no isolated points."""
        assert line_section([parse_poly("x2", ring2)], (0, 0), (1, 0), Fraction(1, 1024)) == []

    def test_random_line(self):
        """Test reproducible random lines with nonzero directions."""
        base, direction = random_line(random.Random(4), 3, 2)
        assert (base, direction) == random_line(random.Random(4), 3, 2)
        assert any(direction)
        assert all(abs(b) <= 2 and b.denominator in (1, 2, 4, 8, 16, 32, 64) for b in base)


class TestHyperplaneSections:
    """Test cases for slicing by rational hyperplanes."""

    def test_sphere_slice_is_a_circle(self, make_ideal):
        """Test that the sphere cut by x3 = 1/2 is a curve."""
        sphere = make_ideal(["x1^2 + x2^2 + x3^2 - 1"])
        section = hyperplane_section(sphere, (0, 0, 1), Fraction(1, 2))
        assert krull_dimension(section) == 1
        assert section.contains(parse_poly("x1^2 + x2^2 - 3/4", sphere.ring))
