from fractions import Fraction

import pytest
from pydantic import ValidationError

from polar_roadmap.common.config import (
    DEFAULT_SETTINGS,
    EngineSettings,
    ImageBackend,
    SignatureMethod,
    build_settings,
    to_fraction,
)
from polar_roadmap.common.errors import ConfigurationError


class TestEngineSettings:
    """Test cases for engine settings."""

    def test_defaults(self):
        """Test the documented defaults."""
        assert DEFAULT_SETTINGS.box_width == Fraction(1, 2 ** 20)
        assert DEFAULT_SETTINGS.tolerance == 1e-8
        assert DEFAULT_SETTINGS.epsilon_factor == 3.0
        assert DEFAULT_SETTINGS.min_component_size == 5
        assert DEFAULT_SETTINGS.signature_method is SignatureMethod.CONGRUENCE
        assert DEFAULT_SETTINGS.image_backend is ImageBackend.KRYLOV

    def test_strings_are_coerced(self):
        """Test that job file strings become typed values."""
        settings = build_settings(box_width="1/1024", max_pairs="500", signature_method="charpoly")
        assert settings.box_width == Fraction(1, 1024)
        assert settings.max_pairs == 500
        assert settings.signature_method is SignatureMethod.CHARPOLY

    @pytest.mark.parametrize("values", [
        {"box_width": "0"},
        {"box_width": "-1/2"},
        {"box_width": "wide"},
        {"max_pairs": 0},
        {"tolerance": -1.0},
        {"image_backend": "magic"},
        {"colour": "blue"},
    ])
    def test_invalid_values(self, values):
        """Test that bad settings raise a configuration error."""
        with pytest.raises(ConfigurationError) as exc_info:
            build_settings(**values)
        assert exc_info.value.exit_code == 1

    def test_settings_are_frozen(self):
        """Test that settings cannot change after construction."""
        settings = build_settings(seed=3)
        with pytest.raises(ValidationError):
            settings.seed = 4

    def test_environment_is_ignored(self, monkeypatch):
        """Test that environment variables never reach the settings."""
        monkeypatch.setenv("SEED", "99")
        monkeypatch.setenv("MAX_PAIRS", "1")
        settings = EngineSettings()
        assert settings.seed == 0
        assert settings.max_pairs == 200_000

    def test_merged(self):
        """Test overrides with None left alone."""
        base = build_settings(seed=1, sample_count=10)
        merged = base.merged(seed=5, max_pairs=None)
        assert merged.seed == 5
        assert merged.sample_count == 10
        assert merged.max_pairs == base.max_pairs
        with pytest.raises(ConfigurationError):
            base.merged(sample_count=0)


class TestToFraction:
    """Test cases for exact rational coercion."""

    @pytest.mark.parametrize("value, expected", [
        (3, Fraction(3)),
        (0.5, Fraction(1, 2)),
        ("3/4", Fraction(3, 4)),
        (" 0.25 ", Fraction(1, 4)),
        (Fraction(2, 3), Fraction(2, 3)),
    ])
    def test_values(self, value, expected):
        """Test accepted spellings."""
        assert to_fraction(value) == expected

    @pytest.mark.parametrize("value", [True, "1/0", "x"])
    def test_rejected(self, value):
        """Test rejected values."""
        with pytest.raises(ValueError):
            to_fraction(value)
