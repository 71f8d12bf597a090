"""
Line-oriented job files.

    # comment
    vars: x1 x2 x3
    poly g = x1^2 + x2^2 + x3^2 - 1
    map: auto center=(1,0,0) seed=7
    i = 2
    command = roadmap

``map:`` is either ``auto`` (squared distance to ``center`` followed by
random integer linear forms drawn from ``seed``) or explicit components
separated by ``;``. Every other setting is a ``key = value`` line.
"""
from enum import Enum
from fractions import Fraction
import hashlib
import logging
from pathlib import Path
import re
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field, ValidationError, model_validator

from polar_roadmap.common.config import EngineSettings, build_settings
from polar_roadmap.common.errors import InvalidInputError, JobFileError, ParseError
from polar_roadmap.geometry.critical import VarietySpec
from polar_roadmap.geometry.maps import PolyMap, build_phi
from polar_roadmap.groebner.ideal import Ideal
from polar_roadmap.polyring.parser import parse_poly, parse_rational
from polar_roadmap.polyring.poly import Poly
from polar_roadmap.polyring.ring import PolyRing

logger = logging.getLogger(__name__)

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_AUTO_OPTION = re.compile(r"(\w+)\s*=\s*(\([^)]*\)|\S+)")


class Command(str, Enum):
    CRITICAL = "critical"
    CHECK = "check"
    ROADMAP = "roadmap"
    VERIFY = "verify"
    SOLVE0D = "solve0d"
    SLICE = "slice"


class MapSpec(BaseModel):
    """Either ``auto`` with a center and a seed, or explicit component expressions."""
    auto: bool = False
    center: List[str] = Field(default_factory=list)
    seed: Optional[int] = None
    components: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def one_shape(self):
        if self.auto and self.components:
            raise ValueError("an automatic map takes no explicit components")
        if not self.auto and not self.components:
            raise ValueError("an explicit map needs at least one component")
        return self


class JobSpec(BaseModel):
    variables: List[str] = Field(default_factory=list)
    polys: Dict[str, str] = Field(default_factory=dict)
    map: Optional[MapSpec] = None
    i: Optional[int] = None
    d: Optional[int] = None
    command: Command = Command.ROADMAP
    u: Optional[str] = None
    levels: List[str] = Field(default_factory=list)
    system: List[str] = Field(default_factory=list)
    phi: Optional[str] = None
    printed: Optional[str] = None
    ablate_fibers: bool = False
    settings: Dict[str, Any] = Field(default_factory=dict)
    source: str = ""

    @model_validator(mode="after")
    def consistent(self):
        if not self.variables:
            raise ValueError("no variables declared")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        if self.command is Command.ROADMAP and (self.map is None or self.i is None):
            raise ValueError("command roadmap needs a map and i")
        if self.command is Command.CHECK and self.phi is None and (self.map is None or self.i is None):
            raise ValueError("command check needs a map and i, or phi")
        if self.command is Command.VERIFY and self.phi is None and (self.map is None or self.i is None):
            raise ValueError("command verify needs a map and i, or phi for the bounded-component check")
        if self.command is Command.SLICE and not self.levels:
            raise ValueError("command slice needs levels")
        if self.map is not None and self.map.auto and self.map.seed is None and "seed" not in self.settings:
            raise ValueError("an automatic map needs a seed")
        return self

    @property
    def job_hash(self) -> str:
        return hashlib.sha256(self.source.encode("utf-8")).hexdigest()

    def ring(self) -> PolyRing:
        return PolyRing.user(self.variables)

    def engine_settings(self, **overrides: Any) -> EngineSettings:
        values = dict(self.settings)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return build_settings(**values)

    def generators(self, ring: PolyRing) -> List[Poly]:
        return [parse_poly(src, ring) for src in self.polys.values()]

    def variety(self, settings: EngineSettings) -> VarietySpec:
        ring = self.ring()
        gens = self.generators(ring)
        if not gens:
            raise InvalidInputError("the job declares no polynomial")
        d = self.d if self.d is not None else ring.nvars - len(gens)
        ideal = Ideal(ring, gens, settings, name="V")
        return VarietySpec.from_ideal(ideal, d, name="V")

    def build_map(self, settings: EngineSettings) -> PolyMap:
        ring = self.ring()
        if self.map is None:
            raise InvalidInputError("the job declares no map")
        if self.map.auto:
            center = [parse_rational(c) for c in self.map.center] or [Fraction(0)] * ring.nvars
            seed = self.map.seed if self.map.seed is not None else settings.seed
            return build_phi(ring, center, seed=seed, max_redraws=settings.max_redraws)
        return PolyMap.from_polys([parse_poly(c, ring) for c in self.map.components])

    def phi_poly(self) -> Optional[Poly]:
        return parse_poly(self.phi, self.ring()) if self.phi is not None else None

    def printed_poly(self) -> Optional[Poly]:
        return parse_poly(self.printed, self.ring()) if self.printed is not None else None

    def system_polys(self) -> List[Poly]:
        ring = self.ring()
        return [parse_poly(src, ring) for src in self.system]

    def u_value(self) -> Optional[Fraction]:
        return parse_rational(self.u) if self.u is not None else None

    def level_values(self) -> List[Fraction]:
        return [parse_rational(t) for t in self.levels]


# Job keys that go straight into EngineSettings, with the setting they fill.
SETTING_KEYS = {
    "samples": "sample_count",
    "width": "box_width",
    "max_pairs": "max_pairs",
    "max_terms": "max_terms",
    "seed": "seed",
    "max_redraws": "max_redraws",
    "fiber_samples": "fiber_samples",
    "epsilon_factor": "epsilon_factor",
    "min_component_size": "min_component_size",
    "slice_levels": "slice_levels",
    "signature": "signature_method",
    "image_backend": "image_backend",
    "box_radius": "sample_box_radius",
}


def _parse_map(text: str, lineno: int) -> MapSpec:
    text = text.strip()
    if text.split(None, 1)[0:1] == ["auto"]:
        options = dict(_AUTO_OPTION.findall(text[4:]))
        unknown = set(options) - {"center", "seed"}
        if unknown:
            raise JobFileError(f"unknown map option {sorted(unknown)[0]!r}", line=lineno)
        center = options.get("center", "").strip("()")
        seed = options.get("seed")
        try:
            return MapSpec(
                auto=True,
                center=[c.strip() for c in center.split(",") if c.strip()],
                seed=int(seed) if seed is not None else None,
            )
        except ValueError as exc:
            raise JobFileError(f"invalid automatic map: {exc}", line=lineno) from exc
    try:
        return MapSpec(components=[c.strip() for c in text.split(";") if c.strip()])
    except ValueError as exc:
        raise JobFileError(f"invalid map: {exc}", line=lineno) from exc


def _rational(value: str, lineno: Optional[int]) -> Fraction:
    try:
        return parse_rational(value)
    except ParseError:
        raise JobFileError(f"not a rational number: {value!r}", line=lineno) from None


def _boolean(value: str, lineno: int) -> bool:
    lowered = value.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise JobFileError(f"not a boolean: {value!r}", line=lineno)


def parse_job(text: str) -> JobSpec:
    """Parse job text; every syntax problem is reported with its line number."""
    fields: Dict[str, Any] = {"polys": {}, "settings": {}}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vars:"):
            fields["variables"] = line[len("vars:"):].split()
            continue
        if line.startswith("map:"):
            fields["map"] = _parse_map(line[len("map:"):], lineno)
            continue
        if line.startswith("poly "):
            head, sep, body = line[len("poly "):].partition("=")
            name = head.strip()
            if not sep or not _NAME.match(name):
                raise JobFileError("expected 'poly <name> = <expression>'", line=lineno)
            if name in fields["polys"]:
                raise JobFileError(f"polynomial {name!r} declared twice", line=lineno)
            fields["polys"][name] = body.strip()
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise JobFileError(f"cannot read line {raw.strip()!r}", line=lineno)
        if key in ("i", "d"):
            try:
                fields[key] = int(value)
            except ValueError:
                raise JobFileError(f"{key} must be an integer", line=lineno) from None
        elif key in ("command", "u", "phi", "printed"):
            fields[key] = value
        elif key == "levels":
            fields["levels"] = [t for t in re.split(r"[,\s]+", value) if t]
        elif key == "system":
            fields["system"] = [c.strip() for c in value.split(";") if c.strip()]
        elif key == "ablate_fibers":
            fields["ablate_fibers"] = _boolean(value, lineno)
        elif key == "tolerance":
            fields["settings"]["tolerance"] = float(_rational(value, lineno))
        elif key in SETTING_KEYS:
            fields["settings"][SETTING_KEYS[key]] = value
        else:
            raise JobFileError(f"unknown key {key!r}", line=lineno)

    fields["source"] = text
    try:
        job = JobSpec(**fields)
    except ValidationError as exc:
        raise JobFileError(f"invalid job: {exc.errors()[0]['msg']}") from exc
    _check_expressions(job)
    return job


def _check_expressions(job: JobSpec) -> None:
    """Parse every expression once so bad input fails before any computation."""
    ring = job.ring()
    expressions = list(job.polys.values()) + job.system
    expressions += [e for e in (job.phi, job.printed) if e is not None]
    if job.map is not None:
        expressions += job.map.components
    for src in expressions:
        try:
            parse_poly(src, ring)
        except ParseError as exc:
            logger.error("bad expression in job: %s", exc.message)
            raise JobFileError(f"cannot parse {src!r}: {exc.message}", line=_line_of(job.source, src)) from exc
    centers = job.map.center if job.map is not None else []
    for text in job.levels + centers + ([job.u] if job.u is not None else []):
        _rational(text, _line_of(job.source, text))


def _line_of(source: str, fragment: str) -> Optional[int]:
    for lineno, line in enumerate(source.splitlines(), start=1):
        if fragment in line:
            return lineno
    return None


def read_job(path: Union[str, Path]) -> JobSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise JobFileError(f"cannot read job file {path}: {exc.strerror}") from exc
    return parse_job(text)


__all__ = ["Command", "JobSpec", "MapSpec", "parse_job", "read_job"]
