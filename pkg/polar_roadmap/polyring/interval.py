from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from polar_roadmap.common.errors import InvalidInputError

Number = Union[int, Fraction]


@dataclass(frozen=True)
class Interval:
    """
    Closed interval [lo, hi] with rational endpoints.

    Endpoints are exact, so every operation below is a sound enclosure
    without rounding.
    """
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise InvalidInputError("interval with lo > hi", lo=str(self.lo), hi=str(self.hi))

    @classmethod
    def point(cls, x: Number) -> "Interval":
        return cls(Fraction(x), Fraction(x))

    @classmethod
    def around(cls, x: Number, radius: Number) -> "Interval":
        x = Fraction(x)
        return cls(x - radius, x + radius)

    @classmethod
    def coerce(cls, value: Union["Interval", Number]) -> "Interval":
        if isinstance(value, Interval):
            return value
        return cls.point(value)

    @classmethod
    def hull_of(cls, values: Iterable[Fraction]) -> "Interval":
        values = list(values)
        return cls(min(values), max(values))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Union["Interval", Number]) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def strictly_contains(self, other: "Interval") -> bool:
        return self.lo < other.lo and other.hi < self.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "Interval") -> "Interval":
        if not self.overlaps(other):
            raise InvalidInputError("disjoint intervals have no intersection")
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def magnitude(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    def __add__(self, other):
        other = Interval.coerce(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        other = Interval.coerce(other)
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        return Interval.coerce(other) - self

    def __mul__(self, other):
        other = Interval.coerce(other)
        products = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise InvalidInputError("negative interval power")
        if exponent == 0:
            return Interval.point(1)
        lo, hi = self.lo ** exponent, self.hi ** exponent
        if exponent % 2 == 1:
            return Interval(lo, hi)
        # even power: the minimum is 0 when the interval straddles zero
        if self.contains_zero():
            return Interval(Fraction(0), max(lo, hi))
        return Interval(min(lo, hi), max(lo, hi))

    def bisect(self):
        mid = self.midpoint
        return Interval(self.lo, mid), Interval(mid, self.hi)

    def to_float_pair(self):
        return float(self.lo), float(self.hi)

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def box_width(box: Iterable[Interval]) -> Fraction:
    return max((iv.width for iv in box), default=Fraction(0))


def boxes_disjoint(a: Iterable[Interval], b: Iterable[Interval]) -> bool:
    return any(not x.overlaps(y) for x, y in zip(a, b))
