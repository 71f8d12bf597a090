"""
Polynomial rings, monomials and monomial orders.

A monomial is a tuple of non-negative exponents whose length equals the
number of ring variables. Orders are exposed as key functions: ``key(m1) >
key(m2)`` iff ``m1`` is the larger monomial.
"""
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
import re
from typing import Callable, Iterable, Optional, Sequence, Tuple

from polar_roadmap.common.errors import InvalidInputError

Monomial = Tuple[int, ...]
MonomialKey = Callable[[Monomial], tuple]

# Names the engine introduces itself: image variables and the saturation variable.
RESERVED_NAME = re.compile(r"^(y\d+|t(_\d+)?)$")
IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Optional[Monomial]:
    """Return a / b, or ``None`` when b does not divide a."""
    q = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in q):
        return None
    return q


def monomial_divides(b: Monomial, a: Monomial) -> bool:
    return all(y <= x for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_degree(m: Monomial) -> int:
    return sum(m)


class OrderKind(str, Enum):
    LEX = "lex"
    GREVLEX = "grevlex"
    BLOCK = "block"


@dataclass(frozen=True)
class MonomialOrder:
    """
    Lexicographic, graded reverse lexicographic, or a block order.

    The block order compares the ``eliminate`` variables first (graded
    reverse lexicographic within the block), then the remaining ones, so any
    monomial containing an eliminated variable beats every monomial free of
    them.
    """
    kind: OrderKind
    eliminate: Tuple[int, ...] = field(default=())

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls(OrderKind.LEX)

    @classmethod
    def grevlex(cls) -> "MonomialOrder":
        return cls(OrderKind.GREVLEX)

    @classmethod
    def block(cls, eliminate: Iterable[int]) -> "MonomialOrder":
        return cls(OrderKind.BLOCK, tuple(sorted(set(eliminate))))

    @cached_property
    def key(self) -> MonomialKey:
        if self.kind is OrderKind.LEX:
            return _lex_key
        if self.kind is OrderKind.GREVLEX:
            return _grevlex_key
        eliminated = self.eliminate

        def block_key(m: Monomial) -> tuple:
            inner = tuple(m[i] for i in eliminated)
            outer = tuple(e for i, e in enumerate(m) if i not in eliminated)
            return _grevlex_key(inner) + _grevlex_key(outer)

        return block_key

    def __str__(self) -> str:
        if self.kind is OrderKind.BLOCK:
            return f"block{list(self.eliminate)}"
        return self.kind.value


def _lex_key(m: Monomial) -> tuple:
    return m


def _grevlex_key(m: Monomial) -> tuple:
    return (sum(m), tuple(-e for e in reversed(m)))


GREVLEX = MonomialOrder.grevlex()
LEX = MonomialOrder.lex()


@dataclass(frozen=True)
class PolyRing:
    """Q[names]: an ordered tuple of variable names."""
    names: Tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise InvalidInputError("duplicate variable names", names=" ".join(self.names))
        for name in self.names:
            if not IDENTIFIER.match(name):
                raise InvalidInputError(f"invalid variable name {name!r}")

    @classmethod
    def user(cls, names: Sequence[str]) -> "PolyRing":
        """A ring declared in user input; reserved engine names are rejected."""
        for name in names:
            if RESERVED_NAME.match(name):
                raise InvalidInputError(f"variable name {name!r} is reserved", name=name)
        if not names:
            raise InvalidInputError("a ring needs at least one variable")
        return cls(tuple(names))

    @classmethod
    def standard(cls, n: int) -> "PolyRing":
        return cls(tuple(f"x{k}" for k in range(1, n + 1)))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InvalidInputError(f"unknown variable {name!r}", name=name) from None

    def fresh_name(self, stem: str) -> str:
        if stem not in self.names:
            return stem
        k = 1
        while f"{stem}_{k}" in self.names:
            k += 1
        return f"{stem}_{k}"

    def extend(self, names: Sequence[str]) -> "PolyRing":
        return PolyRing(self.names + tuple(names))

    def unit_monomial(self, index: Optional[int] = None) -> Monomial:
        m = [0] * self.nvars
        if index is not None:
            m[index] = 1
        return tuple(m)

    def __str__(self) -> str:
        return "Q[" + ", ".join(self.names) + "]"
