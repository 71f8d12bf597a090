import pytest

from polar_roadmap.common.config import build_settings


@pytest.fixture
def dense_settings():
    """Settings for end-to-end connectivity runs."""
    return build_settings(seed=7, sample_count=2000)
