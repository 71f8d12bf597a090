from enum import Enum
from fractions import Fraction
from typing import Any, Tuple, Type

from pydantic import Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

from polar_roadmap.common.errors import ConfigurationError


class SignatureMethod(str, Enum):
    CONGRUENCE = "congruence"
    CHARPOLY = "charpoly"


class ImageBackend(str, Enum):
    KRYLOV = "krylov"
    ELIMINATION = "elimination"


def to_fraction(value: Any) -> Fraction:
    """Parse ints, floats, decimal strings and ``n/d`` strings as exact rationals."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, (int, float)):
        return Fraction(value)
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {value!r}") from exc


class EngineSettings(BaseSettings):
    """
    Every tunable of the engine. Values come from job files and CLI flags only.
    """
    model_config = SettingsConfigDict(frozen=True, arbitrary_types_allowed=True, extra="forbid")

    # Groebner budgets
    max_pairs: int = Field(default=200_000, gt=0)
    max_terms: int = Field(default=200_000, gt=0)

    # Zero-dimensional solving
    box_width: Fraction = Fraction(1, 2**20)
    signature_method: SignatureMethod = SignatureMethod.CONGRUENCE
    image_backend: ImageBackend = ImageBackend.KRYLOV

    # Randomness and re-draws
    seed: int = 0
    max_redraws: int = Field(default=8, gt=0)
    fiber_samples: int = Field(default=3, ge=0)

    # Numerical connectivity harness
    tolerance: float = Field(default=1e-8, gt=0)
    sample_count: int = Field(default=2000, gt=0)
    sample_box_radius: float = Field(default=4.0, gt=0)
    epsilon_factor: float = Field(default=3.0, gt=0)
    min_component_size: int = Field(default=5, ge=1)
    slice_levels: int = Field(default=24, ge=2)

    @field_validator("box_width", mode="before")
    @classmethod
    def parse_box_width(cls, v):
        width = to_fraction(v)
        if width <= 0:
            raise ValueError("box_width must be positive")
        return width

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        # no environment, dotenv or secrets: everything is explicit
        return (init_settings,)

    def merged(self, **overrides: Any) -> "EngineSettings":
        """Return a validated copy with ``overrides`` applied (``None`` values are ignored)."""
        values = self.model_dump()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return build_settings(**values)


def build_settings(**values: Any) -> EngineSettings:
    try:
        return EngineSettings(**values)
    except ValidationError as exc:
        raise ConfigurationError(f"invalid engine settings: {exc.errors()[0]['msg']}", errors=len(exc.errors())) from exc


DEFAULT_SETTINGS = EngineSettings()
