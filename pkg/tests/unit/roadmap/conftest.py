import pytest

from polar_roadmap.geometry.maps import build_phi


@pytest.fixture
def sphere_map(ring3):
    """Squared distance to (2, 0, 0) followed by x2 and x3."""
    return build_phi(ring3, [2, 0, 0], forms=[[0, 1, 0], [0, 0, 1]])
