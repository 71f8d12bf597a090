import pytest

from polar_roadmap.common.config import build_settings
from polar_roadmap.geometry.critical import VarietySpec
from polar_roadmap.geometry.maps import PolyMap
from polar_roadmap.groebner.ideal import Ideal
from polar_roadmap.polyring.parser import parse_poly
from polar_roadmap.polyring.ring import PolyRing

CUBIC = "x1^3 + x2^3 + x3^3 - x1 - x2 - x3 - 1"
PRINTED_W2 = "(3*x1*x3 + 1)*(x1 - x3) + 3*x3^2 - 1"


@pytest.fixture
def ring2():
    return PolyRing.standard(2)


@pytest.fixture
def ring3():
    return PolyRing.standard(3)


@pytest.fixture
def settings():
    return build_settings(seed=7, sample_count=400)


@pytest.fixture
def make_ideal():
    """Build an ideal from expression strings in the standard ring of ``n`` variables."""
    def make(sources, n=None, settings=None):
        ring = PolyRing.standard(n if n is not None else 3)
        return Ideal(ring, [parse_poly(s, ring) for s in sources], settings)
    return make


@pytest.fixture
def sphere(ring3):
    g = parse_poly("x1^2 + x2^2 + x3^2 - 1", ring3)
    return VarietySpec(ring3, (g,), 2)


@pytest.fixture
def circle(ring2):
    g = parse_poly("x1^2 + x2^2 - 1", ring2)
    return VarietySpec(ring2, (g,), 1)


@pytest.fixture
def cubic(ring3):
    return VarietySpec(ring3, (parse_poly(CUBIC, ring3),), 2)


@pytest.fixture
def cubic_map(ring3):
    """Squared distance to (1, 0, 0) followed by x2 and x1."""
    return PolyMap(ring3, tuple(parse_poly(s, ring3) for s in ("(x1-1)^2 + x2^2 + x3^2", "x2", "x1")))


@pytest.fixture
def printed_w2(ring3):
    return parse_poly(PRINTED_W2, ring3)
