import csv
from fractions import Fraction

import numpy as np
import pytest

from polar_roadmap.common.schemas.connectivity import ConnectivityReportModel, Verdict
from polar_roadmap.connectivity.components import epsilon_components
from polar_roadmap.connectivity.numeric import CompiledSystem
from polar_roadmap.connectivity.sampling import sample_real_points
from polar_roadmap.connectivity.verify import (
    RoadmapGraph,
    Verification,
    check_bounded_component_critical,
    export_points,
    export_roadmap,
    fiber_values,
    verify_rm,
    verify_rm_sweep,
)
from polar_roadmap.geometry.maps import build_phi
from polar_roadmap.polyring.parser import parse_poly
from polar_roadmap.roadmap.bundle import assemble_roadmap


@pytest.fixture
def sphere_bundle(sphere, ring3, settings):
    phi = build_phi(ring3, [2, 0, 0], forms=[[0, 1, 0], [0, 0, 1]])
    return assemble_roadmap(sphere, phi, 2, settings)


@pytest.fixture
def circle_verification(make_ideal, ring2, settings):
    circle = make_ideal(["x1^2 + x2^2 - 1"], n=2, settings=settings)
    cloud = sample_real_points(circle, parse_poly("x1^2 + x2^2", ring2), Fraction(4), 60, seed=9)
    graph = epsilon_components(cloud.points)
    roadmap = RoadmapGraph(np.empty((0, 2)))
    roadmap.add_points(np.array([[1.0, 0.0], [-1.0, 0.0]]), "K")
    report = ConnectivityReportModel(u="4", variety_components=graph.count, verdict=Verdict.INCONCLUSIVE)
    return Verification(report, cloud, graph, roadmap)


class TestRoadmapGraph:
    """Test cases for the realised roadmap."""

    def test_paths_are_chained(self):
        """Test that a path adds consecutive edges."""
        roadmap = RoadmapGraph(np.empty((0, 2)))
        roadmap.add_path(np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]), "W")
        assert roadmap.edges == [(0, 1), (1, 2)]
        assert roadmap.tags == ["W", "W", "W"]

    def test_points_are_isolated(self):
        """Test that isolated points add vertices without edges."""
        roadmap = RoadmapGraph(np.empty((0, 2)))
        roadmap.add_path(np.array([[0.0, 0.0], [1.0, 0.0]]), "W")
        roadmap.add_points(np.array([[5.0, 5.0], [6.0, 6.0], [7.0, 7.0]]), "K")
        assert len(roadmap) == 5
        assert roadmap.edges == [(0, 1)]
        roadmap.add_points(np.empty((0, 2)), "K")
        assert len(roadmap) == 5


class TestBoundedComponents:
    """Test cases for the bounded-component critical point check."""

    def test_circle_passes(self, make_ideal, ring2, settings):
        """Test that the circle meets the critical points of x1."""
        circle = make_ideal(["x1^2 + x2^2 - 1"], n=2, settings=settings)
        report = check_bounded_component_critical(circle, parse_poly("x1", ring2), 2, settings)
        assert report.critical_points == 2
        assert report.verdict is Verdict.PASS
        assert [c.bounded for c in report.components] == [True]
        assert report.u == "2"

    def test_line_is_not_bounded(self, make_ideal, ring2, settings):
        """Test that a line has no bounded component and no verdict."""
        line = make_ideal(["x2"], n=2, settings=settings)
        report = check_bounded_component_critical(line, parse_poly("x1", ring2), 0, settings)
        assert report.critical_points == 0
        assert report.verdict is Verdict.INCONCLUSIVE
        assert not any(c.has_critical_point for c in report.components)

    def test_empty_sublevel_set(self, make_ideal, ring2, settings):
        """Test that too few samples are inconclusive."""
        circle = make_ideal(["x1^2 + x2^2 - 1"], n=2, settings=settings)
        report = check_bounded_component_critical(circle, parse_poly("x1", ring2), -2, settings)
        assert report.verdict is Verdict.INCONCLUSIVE
        assert "not enough samples" in report.diagnostics


class TestExport:
    """Test cases for CSV plot data."""

    def test_points_csv(self, circle_verification, tmp_path):
        """Test one row per sample with its component."""
        path = tmp_path / "points.csv"
        export_points(path, circle_verification)
        with path.open() as handle:
            rows = list(csv.reader(handle))
        assert rows[0] == ["component", "x1", "x2", "residual"]
        assert len(rows) == len(circle_verification.cloud) + 1
        assert [int(r[0]) for r in rows[1:]] == circle_verification.graph.labels.tolist()

    def test_roadmap_csv(self, circle_verification, make_ideal, tmp_path):
        """Test one row per roadmap vertex with its part tag and residual."""
        circle = make_ideal(["x1^2 + x2^2 - 1"], n=2)
        path = tmp_path / "roadmap.csv"
        export_roadmap(path, circle_verification, CompiledSystem(circle.generators))
        with path.open() as handle:
            rows = list(csv.reader(handle))
        assert rows[0] == ["component", "part", "x1", "x2", "residual"]
        assert [r[1] for r in rows[1:]] == ["K", "K"]
        assert all(float(r[-1]) == 0.0 for r in rows[1:])


@pytest.mark.slow
class TestVerifySphere:
    """End-to-end connectivity checks on the unit sphere."""

    def test_fiber_values(self, sphere_bundle):
        """Test that the fibers sit over the critical values 1 and 9."""
        assert [float(v) for v in fiber_values(sphere_bundle, Fraction(10))] == pytest.approx([1.0, 9.0])
        assert [float(v) for v in fiber_values(sphere_bundle, Fraction(2))] == pytest.approx([1.0])

    def test_whole_sphere_passes(self, sphere, sphere_bundle, settings):
        """Test that the roadmap meets the sphere in one connected piece."""
        verification = verify_rm(sphere, sphere_bundle, 10, settings)
        report = verification.report
        assert report.verdict is Verdict.PASS
        assert report.variety_components == 1
        assert report.roadmap_points > 0
        assert "u does not exceed every critical value" not in report.diagnostics
        assert set(verification.roadmap.tags) >= {"K", "W"}

    def test_without_fibers(self, sphere, sphere_bundle, settings):
        """Test the ablated run reports the missing fibers."""
        report = verify_rm(sphere, sphere_bundle.without_fibers(), 10, settings, include_fibers=False).report
        assert not report.include_fibers
        assert "fibers excluded" in report.diagnostics

    def test_sweep(self, sphere, sphere_bundle, settings):
        """Test one report per critical value."""
        sweep = verify_rm_sweep(sphere, sphere_bundle, settings=settings)
        assert [float(Fraction(r.u)) for r in sweep.levels] == pytest.approx([1.1, 9.1], abs=1e-3)
        assert sweep.levels[-1].verdict is Verdict.PASS
        assert sweep.verdict is not Verdict.FAIL
        assert "u does not exceed every critical value" not in sweep.levels[-1].diagnostics
