from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
import logging
import threading
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from polar_roadmap.common.config import DEFAULT_SETTINGS, EngineSettings
from polar_roadmap.common.errors import RingMismatchError
from polar_roadmap.groebner.buchberger import Element, Reducer, groebner_integer, make_element
from polar_roadmap.polyring.poly import Poly
from polar_roadmap.polyring.ring import GREVLEX, Monomial, MonomialOrder, PolyRing

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroebnerBasis:
    """
    Reduced Groebner basis: monic elements sorted by decreasing leading monomial.
    """
    ring: PolyRing
    order: MonomialOrder
    elements: Tuple[Poly, ...]
    max_terms: int = field(default=DEFAULT_SETTINGS.max_terms, compare=False)

    @cached_property
    def leading_monomials(self) -> List[Monomial]:
        return [g.leading_monomial(self.order) for g in self.elements]

    @cached_property
    def _integer_elements(self) -> List[Element]:
        key = self.order.key
        result = []
        for g in self.elements:
            terms, _ = g.integer_terms()
            result.append(make_element(terms, key))
        return result

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def is_zero_ideal(self) -> bool:
        return not self.elements

    def normal_form(self, p: Poly) -> Poly:
        """Remainder of ``p`` modulo the basis; no term is divisible by a leading monomial."""
        if p.ring != self.ring:
            raise RingMismatchError("polynomial and basis belong to different rings")
        if p.is_zero() or not self.elements:
            return p
        terms, den = p.integer_terms()
        reducer = Reducer(self.order.key, self.max_terms)
        r, scale = reducer.reduce(terms, self._integer_elements)
        # r == scale * den * p modulo the basis
        factor = 1 / (scale * den)
        return Poly(self.ring, {m: Fraction(c) * factor for m, c in r.items()})

    def contains(self, p: Poly) -> bool:
        return self.normal_form(p).is_zero()

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        return "{" + ", ".join(str(g) for g in self.elements) + "}"


def compute_groebner_basis(
    ring: PolyRing,
    generators: Sequence[Poly],
    order: MonomialOrder,
    settings: EngineSettings = DEFAULT_SETTINGS,
) -> GroebnerBasis:
    inputs = [g.integer_terms()[0] for g in generators if not g.is_zero()]
    basis = groebner_integer(inputs, order.key, settings.max_pairs, settings.max_terms)
    elements = []
    for terms in basis:
        p = Poly(ring, terms)
        elements.append(p.monic(order))
    elements.sort(key=lambda g: order.key(g.leading_monomial(order)), reverse=True)
    return GroebnerBasis(ring, order, tuple(elements), settings.max_terms)


class Ideal:
    """
    Ideal of Q[x] given by generators, with a write-once cache of reduced
    Groebner bases per monomial order.

    An empty generator list (after dropping zeros) is the zero ideal.
    """

    def __init__(
        self,
        ring: PolyRing,
        generators: Iterable[Poly],
        settings: Optional[EngineSettings] = None,
        name: Optional[str] = None,
    ):
        self.ring = ring
        gens = []
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError("generator belongs to a different ring", ring=str(ring), generator=str(g))
            if not g.is_zero() and g not in gens:
                gens.append(g)
        self.generators: Tuple[Poly, ...] = tuple(gens)
        self.settings = settings or DEFAULT_SETTINGS
        self.name = name
        self._cache: Dict[MonomialOrder, GroebnerBasis] = {}
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, ring: PolyRing, settings: Optional[EngineSettings] = None) -> "Ideal":
        return cls(ring, [Poly.one(ring)], settings)

    @classmethod
    def zero(cls, ring: PolyRing, settings: Optional[EngineSettings] = None) -> "Ideal":
        return cls(ring, [], settings)

    def derive(self, generators: Iterable[Poly], ring: Optional[PolyRing] = None, name: Optional[str] = None) -> "Ideal":
        """A new ideal sharing this one's settings."""
        return Ideal(ring or self.ring, generators, self.settings, name)

    @property
    def is_zero_ideal(self) -> bool:
        return not self.generators

    def groebner_basis(self, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
        cached = self._cache.get(order)
        if cached is not None:
            return cached
        with self._lock:
            cached = self._cache.get(order)
            if cached is None:
                logger.debug("computing %s basis of %d generators in %s", order, len(self.generators), self.ring)
                cached = compute_groebner_basis(self.ring, self.generators, order, self.settings)
                self._cache[order] = cached
        return cached

    def seed_basis(self, basis: GroebnerBasis) -> None:
        """Publish an externally computed basis; an existing entry wins."""
        with self._lock:
            self._cache.setdefault(basis.order, basis)

    def contains(self, p: Poly) -> bool:
        if p.is_zero():
            return True
        if self.is_zero_ideal:
            return False
        return self.groebner_basis().contains(p)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def equals(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_unit(self) -> bool:
        if self.is_zero_ideal:
            return False
        if any(g.is_constant() for g in self.generators):
            return True
        return self.groebner_basis().is_unit()

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise RingMismatchError("ideals belong to different rings")
        return self.derive(self.generators + other.generators)

    def with_generators(self, extra: Iterable[Poly]) -> "Ideal":
        return self.derive(self.generators + tuple(extra))

    def generator_strings(self) -> List[str]:
        return [str(g) for g in self.generators]

    def __repr__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"Ideal({label}<{', '.join(self.generator_strings())}> in {self.ring})"
