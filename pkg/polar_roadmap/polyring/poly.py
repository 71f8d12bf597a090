# Copyright 2024 polar-roadmap contributors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from polar_roadmap.common.errors import DimensionMismatchError, InvalidInputError, RingMismatchError
from polar_roadmap.polyring.interval import Interval
from polar_roadmap.polyring.ring import (
    GREVLEX,
    Monomial,
    MonomialOrder,
    PolyRing,
    monomial_div,
    monomial_mul,
)

Scalar = Union[int, Fraction]

# Degree reported for the zero polynomial.
ZERO_DEGREE = -1


class Poly:
    """
    Sparse polynomial over Q: a map from exponent tuples to nonzero Fractions.

    Instances are treated as immutable; every operation returns a new Poly.
    """
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Optional[Mapping[Monomial, Scalar]] = None):
        self.ring = ring
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if len(m) != ring.nvars:
                    raise DimensionMismatchError(
                        "monomial length does not match the ring", expected=ring.nvars, got=len(m)
                    )
                if c:
                    clean[tuple(m)] = Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: PolyRing, terms: Dict[Monomial, Fraction]) -> "Poly":
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ring: PolyRing) -> "Poly":
        return cls._raw(ring, {})

    @classmethod
    def constant(cls, ring: PolyRing, c: Scalar) -> "Poly":
        c = Fraction(c)
        return cls._raw(ring, {ring.unit_monomial(): c} if c else {})

    @classmethod
    def one(cls, ring: PolyRing) -> "Poly":
        return cls.constant(ring, 1)

    @classmethod
    def var(cls, ring: PolyRing, index: Union[int, str]) -> "Poly":
        if isinstance(index, str):
            index = ring.index(index)
        if not 0 <= index < ring.nvars:
            raise DimensionMismatchError("variable index out of range", index=index, nvars=ring.nvars)
        return cls._raw(ring, {ring.unit_monomial(index): Fraction(1)})

    @classmethod
    def monomial(cls, ring: PolyRing, m: Monomial, c: Scalar = 1) -> "Poly":
        return cls(ring, {tuple(m): c})

    @classmethod
    def gens(cls, ring: PolyRing) -> List["Poly"]:
        return [cls.var(ring, k) for k in range(ring.nvars)]

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get(self.ring.unit_monomial(), Fraction(0))

    def degree(self) -> int:
        if not self.terms:
            return ZERO_DEGREE
        return max(sum(m) for m in self.terms)

    def degree_in(self, index: int) -> int:
        if not self.terms:
            return ZERO_DEGREE
        return max(m[index] for m in self.terms)

    def support(self) -> Tuple[int, ...]:
        """Indices of the variables that occur in the polynomial."""
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return tuple(sorted(used))

    def __len__(self) -> int:
        return len(self.terms)

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> List[Tuple[Monomial, Fraction]]:
        key = order.key
        return sorted(self.terms.items(), key=lambda item: key(item[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        if not self.terms:
            raise InvalidInputError("the zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Poly":
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    def primitive(self, order: MonomialOrder = GREVLEX) -> "Poly":
        """Scale to coprime integer coefficients with a positive leading coefficient."""
        if not self.terms:
            return self
        num, _ = self.integer_terms()
        content = reduce(gcd, num.values())
        sign = 1 if num[self.leading_monomial(order)] > 0 else -1
        return Poly._raw(self.ring, {m: Fraction(sign * c // content) for m, c in num.items()})

    def integer_terms(self) -> Tuple[Dict[Monomial, int], int]:
        """Return (integer terms, D) with ``D * self`` equal to the integer terms."""
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        return {m: int(c * den) for m, c in self.terms.items()}, den

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if other.ring != self.ring:
            raise RingMismatchError("polynomials belong to different rings", left=str(self.ring), right=str(other.ring))

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self.ring, other)
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m, 0) + c
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return Poly._raw(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly.zero(self.ring)
            return Poly._raw(self.ring, {m: c * other for m, c in self.terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_mul(m1, m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return Poly._raw(self.ring, {m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, exponent: int) -> "Poly":
        if not isinstance(exponent, int) or exponent < 0:
            raise InvalidInputError("polynomial exponent must be a non-negative integer", exponent=str(exponent))
        result = Poly.one(self.ring)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def mul_term(self, m: Monomial, c: Scalar) -> "Poly":
        return Poly._raw(self.ring, {monomial_mul(k, m): v * c for k, v in self.terms.items()})

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Divide exactly; raise if ``divisor`` does not divide ``self``."""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        order = GREVLEX
        lm = divisor.leading_monomial(order)
        lc = divisor.terms[lm]
        remainder = self
        quotient: Dict[Monomial, Fraction] = {}
        while remainder:
            m = remainder.leading_monomial(order)
            q = monomial_div(m, lm)
            if q is None:
                raise InvalidInputError("polynomial division is not exact")
            c = remainder.terms[m] / lc
            quotient[q] = quotient.get(q, 0) + c
            remainder = remainder - divisor.mul_term(q, c)
        return Poly(self.ring, quotient)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Poly.constant(self.ring, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and evaluation -------------------------------------------

    def derivative(self, index: int) -> "Poly":
        if not 0 <= index < self.ring.nvars:
            raise DimensionMismatchError("variable index out of range", index=index, nvars=self.ring.nvars)
        terms: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            e = m[index]
            if e:
                dm = m[:index] + (e - 1,) + m[index + 1:]
                terms[dm] = c * e
        return Poly._raw(self.ring, terms)

    def gradient(self) -> List["Poly"]:
        return [self.derivative(k) for k in range(self.ring.nvars)]

    def evaluate(self, point: Sequence):
        """
        Evaluate at a rational point (exact result) or at a box of Intervals
        (sound enclosure). Mixed points are treated as boxes.
        """
        if len(point) != self.ring.nvars:
            raise DimensionMismatchError("point length does not match the ring", expected=self.ring.nvars, got=len(point))
        if any(isinstance(x, Interval) for x in point):
            box = [Interval.coerce(x) for x in point]
            total = Interval.point(0)
            for m, c in self.terms.items():
                term = Interval.point(c)
                for x, e in zip(box, m):
                    if e:
                        term = term * (x ** e)
                total = total + term
            return total
        values = [Fraction(x) for x in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for x, e in zip(values, m):
                if e:
                    term *= x ** e
            total += term
        return total

    def evaluate_float(self, point: Sequence[float]) -> float:
        total = 0.0
        for m, c in self.terms.items():
            term = float(c)
            for x, e in zip(point, m):
                if e:
                    term *= x ** e
            total += term
        return total

    def compose(self, values: Sequence["Poly"]) -> "Poly":
        """Substitute ``values[k]`` for the k-th variable; the result lives in their ring."""
        if len(values) != self.ring.nvars:
            raise DimensionMismatchError("substitution length does not match the ring", expected=self.ring.nvars, got=len(values))
        if not values:
            raise InvalidInputError("cannot compose in a ring without variables")
        target = values[0].ring
        powers: List[Dict[int, Poly]] = [{0: Poly.one(target), 1: v} for v in values]

        def power(k: int, e: int) -> Poly:
            cache = powers[k]
            if e not in cache:
                cache[e] = power(k, e - 1) * values[k]
            return cache[e]

        result = Poly.zero(target)
        for m, c in self.terms.items():
            term = Poly.constant(target, c)
            for k, e in enumerate(m):
                if e:
                    term = term * power(k, e)
            result = result + term
        return result

    def embed(self, ring: PolyRing, positions: Optional[Sequence[int]] = None) -> "Poly":
        """
        Move into ``ring``, sending variable k to ``positions[k]``
        (default: the same index, for ring extensions).
        """
        if positions is None:
            positions = range(self.ring.nvars)
        positions = list(positions)
        terms = {}
        for m, c in self.terms.items():
            target = [0] * ring.nvars
            for k, e in enumerate(m):
                if e:
                    target[positions[k]] = e
            terms[tuple(target)] = c
        return Poly._raw(ring, terms)

    def restrict(self, ring: PolyRing, positions: Sequence[int]) -> "Poly":
        """
        Inverse of ``embed``: keep only variables at ``positions`` (which must
        contain the support) and relabel them into ``ring``.
        """
        positions = list(positions)
        allowed = set(positions)
        terms = {}
        for m, c in self.terms.items():
            if any(e and i not in allowed for i, e in enumerate(m)):
                raise InvalidInputError("polynomial involves variables outside the target ring")
            terms[tuple(m[i] for i in positions)] = c
        return Poly._raw(ring, terms)

    def univariate_coefficients(self, index: int) -> List[Fraction]:
        """Coefficients (low to high) of a polynomial that involves only variable ``index``."""
        if any(e for m in self.terms for i, e in enumerate(m) if i != index):
            raise InvalidInputError("polynomial is not univariate in the requested variable")
        degree = max(self.degree_in(index), 0)
        coeffs = [Fraction(0)] * (degree + 1)
        for m, c in self.terms.items():
            coeffs[m[index]] = c
        return coeffs

    @classmethod
    def from_univariate(cls, ring: PolyRing, index: int, coeffs: Iterable[Scalar]) -> "Poly":
        terms = {}
        for e, c in enumerate(coeffs):
            if c:
                m = [0] * ring.nvars
                m[index] = e
                terms[tuple(m)] = Fraction(c)
        return cls._raw(ring, terms)

    # -- printing -----------------------------------------------------------

    def to_string(self, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        pieces: List[str] = []
        for m, c in self.sorted_terms(order):
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.ring.names, m) if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Poly({self.to_string()!r}, ring={list(self.ring.names)})"

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self.terms.items())


def polys_in_same_ring(polys: Sequence[Poly]) -> PolyRing:
    if not polys:
        raise InvalidInputError("empty polynomial list")
    ring = polys[0].ring
    for p in polys[1:]:
        if p.ring != ring:
            raise RingMismatchError("polynomials belong to different rings")
    return ring


def poly_arith(kind: str, a: Poly, b: Union[Poly, int]) -> Poly:
    """Dispatch ``add``, ``sub``, ``mul`` or ``pow`` by name."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "pow":
        return a ** b
    raise InvalidInputError(f"unknown polynomial operation {kind!r}")
