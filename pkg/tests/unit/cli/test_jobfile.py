from fractions import Fraction
import hashlib
from pathlib import Path

import pytest

from polar_roadmap.cli.jobfile import SETTING_KEYS, Command, MapSpec, parse_job, read_job
from polar_roadmap.common.config import EngineSettings
from polar_roadmap.common.errors import InvalidInputError, JobFileError

JOBS_DIR = Path(__file__).resolve().parents[3] / "jobs"

SPHERE_JOB = """\
# unit sphere
vars: x1 x2 x3
poly g = x1^2 + x2^2 + x3^2 - 1
map: auto center=(1/3,1/5,1/7) seed=11
i = 2
command = verify
u = 5
samples = 300
"""


class TestParseJob:
    """Test cases for reading job files."""

    def test_sphere_job(self):
        """Test every field of a complete job."""
        job = parse_job(SPHERE_JOB)
        assert job.variables == ["x1", "x2", "x3"]
        assert job.polys == {"g": "x1^2 + x2^2 + x3^2 - 1"}
        assert job.command is Command.VERIFY
        assert job.i == 2
        assert job.u_value() == 5
        assert job.map == MapSpec(auto=True, center=["1/3", "1/5", "1/7"], seed=11)
        assert job.settings == {"sample_count": "300"}
        assert job.job_hash == hashlib.sha256(SPHERE_JOB.encode("utf-8")).hexdigest()

    def test_engine_settings(self):
        """Test that job settings and CLI overrides meet in one settings object."""
        settings = parse_job(SPHERE_JOB).engine_settings(seed=4, max_pairs=None)
        assert isinstance(settings, EngineSettings)
        assert settings.sample_count == 300
        assert settings.seed == 4

    def test_automatic_map(self):
        """Test that the automatic map is a squared distance to the center."""
        job = parse_job(SPHERE_JOB)
        phi = job.build_map(job.engine_settings())
        assert len(phi) == 3
        assert phi.squared_distance_center() == (Fraction(1, 3), Fraction(1, 5), Fraction(1, 7))

    def test_explicit_map(self):
        """Test explicit map components separated by semicolons."""
        job = parse_job("vars: x1 x2\npoly g = x1^2 + x2^2 - 1\nmap: x1; x2\ni = 1\n")
        phi = job.build_map(job.engine_settings())
        assert [str(c) for c in phi.components] == ["x1", "x2"]

    def test_variety_codimension(self):
        """Test that d defaults to n minus the number of polynomials."""
        job = parse_job(SPHERE_JOB)
        variety = job.variety(job.engine_settings())
        assert variety.dimension == 2

    def test_slice_levels(self):
        """Test level lists separated by commas or spaces."""
        job = parse_job("vars: x1 x2\npoly g = x1^2 + x2^2 - 1\nphi = x1\ncommand = slice\nlevels = 1/2, 1 3/2\n")
        assert job.level_values() == [Fraction(1, 2), Fraction(1), Fraction(3, 2)]

    def test_solve0d_system(self):
        """Test that a system line holds several polynomials."""
        job = parse_job("vars: x y\ncommand = solve0d\nsystem = x^2 + y^2 - 4; x*y - 1\n")
        assert [str(p) for p in job.system_polys()] == ["x^2 + y^2 - 4", "x*y - 1"]
        with pytest.raises(InvalidInputError):
            job.variety(job.engine_settings())

    @pytest.mark.parametrize("text, line", [
        ("vars: x1\ncolour = red\n", 2),
        ("vars: x1\npoly = x1\n", 2),
        ("vars: x1\n\npoly g = x1\npoly g = x1 - 1\n", 4),
        ("vars: x1\ni = two\n", 2),
        ("vars: x1\npoly g = x1 + y\ncommand = critical\n", 2),
        ("vars: x1\npoly g = x1\nphi = x1\ncommand = verify\nu = 1/0\n", 5),
        ("vars: x1\nmap: auto seed=1 radius=3\n", 2),
        ("vars: x1\nablate_fibers = maybe\n", 2),
        ("vars: x1 x2\nthis line has no equals sign\n", 2),
    ])
    def test_errors_carry_line(self, text, line):
        """Test that syntax problems name their line."""
        with pytest.raises(JobFileError) as exc_info:
            parse_job(text)
        assert exc_info.value.details["line"] == line
        assert exc_info.value.exit_code == 1

    @pytest.mark.parametrize("text, message", [
        ("poly g = x1\n", "no variables"),
        ("vars: x1 x1\npoly g = x1\n", "duplicate variable"),
        ("vars: x1\npoly g = x1\ncommand = roadmap\n", "needs a map and i"),
        ("vars: x1\npoly g = x1\ncommand = slice\n", "needs levels"),
        ("vars: x1\npoly g = x1\nmap: auto\ni = 1\n", "needs a seed"),
        ("vars: x1\npoly g = x1\ncommand = wander\n", "invalid job"),
    ])
    def test_inconsistent_jobs(self, text, message):
        """Test whole-job validation."""
        with pytest.raises(JobFileError) as exc_info:
            parse_job(text)
        assert message in exc_info.value.message

    def test_every_setting_key_is_a_setting(self):
        """Test that job keys map onto real settings fields."""
        assert set(SETTING_KEYS.values()) <= set(EngineSettings.model_fields)

    def test_read_job(self, tmp_path):
        """Test reading from disk and a missing file."""
        path = tmp_path / "sphere.job"
        path.write_text(SPHERE_JOB, encoding="utf-8")
        assert read_job(path).command is Command.VERIFY
        with pytest.raises(JobFileError):
            read_job(tmp_path / "missing.job")


class TestMapSpec:
    """Test cases for map declarations."""

    def test_one_shape(self):
        """Test that a map is either automatic or explicit."""
        with pytest.raises(ValueError):
            MapSpec(auto=True, components=["x1"])
        with pytest.raises(ValueError):
            MapSpec()
        assert MapSpec(components=["x1"]).auto is False


class TestBundledJobs:
    """Test cases for the job files shipped in jobs/."""

    @pytest.mark.parametrize("path", sorted(JOBS_DIR.glob("*.job")), ids=lambda p: p.stem)
    def test_bundled_job_parses(self, path):
        """Test that every bundled job reads and builds its settings."""
        job = read_job(path)
        assert job.variables
        assert isinstance(job.engine_settings(), EngineSettings)

    def test_cubic_surface_job(self):
        """Test the explicit map and printed generator of the cubic surface job."""
        job = read_job(JOBS_DIR / "cubic_surface.job")
        assert job.command is Command.ROADMAP
        assert job.map.components == ["(x1-1)^2 + x2^2 + x3^2", "x2", "x1"]
        assert job.printed_poly() is not None
        assert job.engine_settings().seed == 7
