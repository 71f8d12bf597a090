from fractions import Fraction

import pytest

from polar_roadmap.common.config import build_settings
from polar_roadmap.common.schemas.connectivity import Verdict
from polar_roadmap.connectivity.verify import check_bounded_component_critical, verify_rm
from polar_roadmap.geometry.critical import critical_points_ideal
from polar_roadmap.geometry.maps import build_phi
from polar_roadmap.polyring.parser import parse_poly
from polar_roadmap.roadmap.bundle import assemble_roadmap
from polar_roadmap.zerodim.solve import solve_real

pytestmark = pytest.mark.slow

TORUS = "(x1^2 + x2^2 + x3^2 + 3)^2 - 16*(x1^2 + x2^2)"


class TestSphere:
    """Critical points and roadmaps of the unit sphere."""

    def test_critical_points_of_x1(self, sphere, ring3):
        """Test that x1 is critical exactly at (+-1, 0, 0)."""
        k = critical_points_ideal(sphere, parse_poly("x1", ring3)).k_ideal
        boxes = solve_real(k, Fraction(1, 2 ** 20))
        assert len(boxes) == 2
        assert all(box.width <= Fraction(1, 2 ** 20) for box in boxes)
        assert sorted(round(box.midpoint_float()[0]) for box in boxes) == [-1, 1]
        assert all(abs(box.midpoint_float()[1]) < 1e-6 and abs(box.midpoint_float()[2]) < 1e-6 for box in boxes)

    def test_random_map_roadmap(self, sphere, ring3, dense_settings):
        """Test RM_u beyond every critical value for a seeded map."""
        phi = build_phi(ring3, [Fraction(1, 3), Fraction(1, 5), Fraction(1, 7)], seed=11)
        bundle = assemble_roadmap(sphere, phi, 2, dense_settings)
        report = verify_rm(sphere, bundle, 5, dense_settings).report
        assert report.verdict is Verdict.PASS


class TestBoundedComponents:
    """Bounded sublevel components meet the critical locus."""

    def test_circle(self, make_ideal, ring2, dense_settings):
        """Test the circle below x1 = 2."""
        circle = make_ideal(["x1^2 + x2^2 - 1"], n=2, settings=dense_settings)
        report = check_bounded_component_critical(circle, parse_poly("x1", ring2), 2, dense_settings)
        assert report.verdict is Verdict.PASS

    def test_torus(self, make_ideal, ring3, dense_settings):
        """Test the torus below x1 = 1."""
        torus = make_ideal([TORUS], settings=dense_settings)
        report = check_bounded_component_critical(torus, parse_poly("x1", ring3), 1, dense_settings)
        assert report.critical_points == 3
        assert report.verdict is Verdict.PASS

    def test_cylinder(self, make_ideal, ring3, dense_settings):
        """Test that the critical circle of the squared norm lies in the bounded piece of a cylinder."""
        cylinder = make_ideal(["x1^2 + x2^2 - 1"], settings=dense_settings)
        report = check_bounded_component_critical(cylinder, parse_poly("x1^2 + x2^2 + x3^2", ring3), 2, dense_settings)
        assert report.critical_points > 0
        assert report.verdict is Verdict.PASS

    def test_two_circles(self, make_ideal, ring2):
        """Test that both circles are bounded and each holds a critical point."""
        settings = build_settings(seed=1, sample_count=800, sample_box_radius=12)
        circles = make_ideal(["(x1^2 + x2^2 - 1)*((x1 - 10)^2 + x2^2 - 1)"], n=2, settings=settings)
        report = check_bounded_component_critical(circles, parse_poly("x1", ring2), 12, settings)
        assert [c.bounded for c in report.components] == [True, True]
        assert report.verdict is Verdict.PASS
