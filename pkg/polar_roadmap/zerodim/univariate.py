"""
Univariate polynomials as coefficient lists (lowest degree first): gcd and
square-free parts over Q, Descartes/bisection root isolation on integer
polynomials, exact refinement, and Sturm sequences.
"""
from fractions import Fraction
from functools import reduce
import logging
from math import gcd
from typing import List, Optional, Sequence, Tuple

from polar_roadmap.common.errors import InvalidInputError
from polar_roadmap.polyring.interval import Interval

logger = logging.getLogger(__name__)

Coeffs = List[Fraction]


def trim(c: Sequence) -> list:
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return c


def degree(c: Sequence) -> int:
    return len(trim(c)) - 1


def to_integer(c: Sequence[Fraction]) -> List[int]:
    """Primitive integer multiple with positive leading coefficient."""
    c = trim(c)
    if not c:
        return []
    den = reduce(lambda a, b: a * b // gcd(a, b), (Fraction(x).denominator for x in c), 1)
    ints = [int(Fraction(x) * den) for x in c]
    content = reduce(gcd, ints)
    if ints[-1] < 0:
        content = -content
    return [x // content for x in ints]


def evaluate(c: Sequence, x) -> Fraction:
    result = Fraction(0)
    for a in reversed(c):
        result = result * x + a
    return result


def sign(x) -> int:
    return (x > 0) - (x < 0)


def derivative(c: Sequence) -> list:
    return [i * a for i, a in enumerate(c)][1:]


def divmod_q(a: Sequence, b: Sequence) -> Tuple[Coeffs, Coeffs]:
    a = [Fraction(x) for x in trim(a)]
    b = [Fraction(x) for x in trim(b)]
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        q[shift] = f
        for i, y in enumerate(b):
            a[i + shift] -= f * y
        a = trim(a)
    return trim(q), a


def gcd_q(a: Sequence, b: Sequence) -> Coeffs:
    """Monic gcd over Q."""
    a, b = trim(a), trim(b)
    while b:
        _, r = divmod_q(a, b)
        a, b = b, r
    if not a:
        return []
    lead = Fraction(a[-1])
    return [Fraction(x) / lead for x in a]


def mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def lcm_q(a: Sequence, b: Sequence) -> List[int]:
    g = gcd_q(a, b)
    q, _ = divmod_q(mul(a, b), g)
    return to_integer(q)


def squarefree(c: Sequence) -> List[int]:
    c = trim(c)
    if len(c) <= 2:
        return to_integer(c)
    g = gcd_q(c, derivative(c))
    q, _ = divmod_q(c, g)
    return to_integer(q)


def taylor_shift(c: Sequence[int], a: int = 1) -> List[int]:
    """Coefficients of p(x + a)."""
    c = list(c)
    n = len(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += a * c[j + 1]
    return c


def sign_variations(seq: Sequence) -> int:
    signs = [sign(x) for x in seq if x]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _descartes_unit(r: Sequence[int]) -> int:
    """Descartes bound for roots in the open interval (0, 1)."""
    rev = trim(list(reversed(trim(r))))
    if len(rev) <= 1:
        return 0
    return sign_variations(taylor_shift(rev, 1))


def descartes_bound(c: Sequence, lo: Fraction, hi: Fraction) -> int:
    """Descartes bound for roots of ``c`` in the open interval (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    width = hi - lo
    # p(lo + width * y)
    shifted = [Fraction(0)] * len(c)
    for i, a in enumerate(c):
        # expand a * (lo + width*y)^i via the binomial theorem
        term = Fraction(a)
        binom = 1
        for k in range(i + 1):
            shifted[k] += term * binom * lo ** (i - k) * width ** k
            binom = binom * (i - k) // (k + 1)
    return _descartes_unit(to_integer(shifted))


def cauchy_bound(c: Sequence[int]) -> int:
    """A power of two strictly larger than the modulus of every root."""
    c = trim(c)
    lead = abs(Fraction(c[-1]))
    bound = 1 + max((abs(Fraction(a)) / lead for a in c[:-1]), default=Fraction(0))
    power = 1
    while power <= bound:
        power *= 2
    return power


def isolate_real_roots(c: Sequence) -> List[Interval]:
    """
    Disjoint isolating intervals for the distinct real roots, sorted
    increasingly. Exact rational roots found on the way are point intervals;
    other intervals contain exactly one root in their interior.
    """
    c = trim(c)
    if not c:
        raise InvalidInputError("cannot isolate the roots of the zero polynomial")
    q = squarefree(c)
    d = len(q) - 1
    if d <= 0:
        return []
    bound = cauchy_bound(q)
    # roots of q0 in (0, 1) correspond to roots of q in (-bound, bound)
    shifted = taylor_shift(q, -bound)
    q0 = [a * (2 * bound) ** i for i, a in enumerate(shifted)]

    found: List[Tuple[Fraction, Fraction]] = []
    stack = [(q0, 0, 0)]
    while stack:
        r, k, cidx = stack.pop()
        while r and r[0] == 0:
            r = r[1:]
        variations = _descartes_unit(r)
        if variations == 0:
            continue
        scale = Fraction(1, 2 ** k)
        if variations == 1:
            found.append((cidx * scale, (cidx + 1) * scale))
            continue
        deg = len(r) - 1
        left = [a * 2 ** (deg - i) for i, a in enumerate(r)]
        if sum(left) == 0:
            mid = (2 * cidx + 1) * Fraction(1, 2 ** (k + 1))
            found.append((mid, mid))
        right = taylor_shift(left, 1)
        stack.append((right, k + 1, 2 * cidx + 1))
        stack.append((left, k + 1, 2 * cidx))

    intervals = [
        Interval(-bound + 2 * bound * lo, -bound + 2 * bound * hi) for lo, hi in found
    ]
    intervals.sort(key=lambda iv: (iv.lo, iv.hi))
    return _separate(q, intervals)


def _halve(c: Sequence, iv: Interval) -> Interval:
    """Half of an isolating interval that keeps its root (a point if the midpoint is the root)."""
    mid = iv.midpoint
    if evaluate(c, mid) == 0:
        return Interval.point(mid)
    # the count in (lo, mid) is 0 or 1 and has the parity of its Descartes bound
    if descartes_bound(c, iv.lo, mid) % 2 == 1:
        return Interval(iv.lo, mid)
    return Interval(mid, iv.hi)


def _separate(c: Sequence, intervals: List[Interval]) -> List[Interval]:
    """Shrink neighbouring intervals until no two share a point."""
    intervals = list(intervals)
    k = 0
    while k + 1 < len(intervals):
        a, b = intervals[k], intervals[k + 1]
        if a.hi < b.lo:
            k += 1
            continue
        if a.width:
            intervals[k] = _halve(c, a)
        if b.width:
            intervals[k + 1] = _halve(c, b)
        k = max(k - 1, 0)
    return intervals


def refine_root(c: Sequence, interval: Interval, width: Fraction) -> Interval:
    """
    Shrink an isolating interval of a square-free ``c`` below ``width``.
    """
    lo, hi = interval.lo, interval.hi
    if lo == hi:
        return interval
    s_lo, s_hi = sign(evaluate(c, lo)), sign(evaluate(c, hi))
    while hi - lo > width:
        mid = (lo + hi) / 2
        s_mid = sign(evaluate(c, mid))
        if s_mid == 0:
            return Interval.point(mid)
        if s_lo != 0:
            go_left = s_mid != s_lo
        elif s_hi != 0:
            go_left = s_mid == s_hi
        else:
            go_left = descartes_bound(c, lo, mid) % 2 == 1
        if go_left:
            hi, s_hi = mid, s_mid
        else:
            lo, s_lo = mid, s_mid
    return Interval(lo, hi)


def real_roots(c: Sequence, width: Fraction) -> List[Interval]:
    q = squarefree(c)
    return [refine_root(q, iv, width) for iv in isolate_real_roots(q)]


# -- Sturm sequences -------------------------------------------------------

def sturm_sequence(c: Sequence) -> List[Coeffs]:
    p0 = [Fraction(x) for x in trim(c)]
    seq = [p0]
    p1 = derivative(p0)
    while trim(p1):
        seq.append(trim(p1))
        _, r = divmod_q(seq[-2], seq[-1])
        p1 = [-x for x in r]
    return seq


def _variations_at(seq: Sequence[Coeffs], x: Optional[Fraction], at_plus_inf: bool = True) -> int:
    if x is None:
        values = []
        for p in seq:
            lead = p[-1]
            deg = len(p) - 1
            values.append(lead if at_plus_inf or deg % 2 == 0 else -lead)
        return sign_variations(values)
    return sign_variations([evaluate(p, x) for p in seq])


def sturm_count(c: Sequence, lo: Optional[Fraction] = None, hi: Optional[Fraction] = None) -> int:
    """Distinct real roots in (lo, hi]; ``None`` bounds mean infinity."""
    seq = sturm_sequence(c)
    if len(seq[0]) <= 1:
        return 0
    v_lo = _variations_at(seq, lo, at_plus_inf=False) if lo is not None else _variations_at(seq, None, False)
    v_hi = _variations_at(seq, hi) if hi is not None else _variations_at(seq, None, True)
    return v_lo - v_hi


def interval_horner(c: Sequence, x: Interval) -> Interval:
    result = Interval.point(0)
    for a in reversed(c):
        result = result * x + a
    return result


refine_interval = refine_root
