"""
Buchberger's algorithm on fraction-free integer polynomials.

Polynomials are dicts ``{monomial: int}`` kept primitive (content 1). The
pair queue follows the normal selection strategy (smallest lcm first) and
the Gebauer-Moller update discards useless pairs before they are reduced.
The public Fraction-based API lives in ``groebner.ideal``.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
import logging
from math import gcd
from typing import Callable, Dict, List, Sequence, Set, Tuple

from polar_roadmap.common.errors import ResourceLimitError
from polar_roadmap.polyring.ring import (
    Monomial,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)

logger = logging.getLogger(__name__)

IntPoly = Dict[Monomial, int]

# Coefficient bit size above which a running remainder is made primitive again.
CONTENT_BITS = 256


@dataclass
class Element:
    terms: IntPoly
    lm: Monomial
    lc: int


def primitive(terms: IntPoly) -> IntPoly:
    if not terms:
        return terms
    content = reduce(gcd, terms.values())
    if content == 1:
        return terms
    return {m: c // content for m, c in terms.items()}


def make_element(terms: IntPoly, key: Callable) -> Element:
    lm = max(terms, key=key)
    if terms[lm] < 0:
        terms = {m: -c for m, c in terms.items()}
    return Element(terms, lm, terms[lm])


class Reducer:
    """
    Reduce integer polynomials modulo a list of elements.

    ``reduce`` returns ``(r, s)`` with ``r`` fully reduced and ``r``
    congruent to ``s * p`` modulo the elements, ``s`` a positive rational.
    """

    def __init__(self, key: Callable, max_terms: int):
        self.key = key
        self.max_terms = max_terms
        self._keys: Dict[Monomial, tuple] = {}

    def k(self, m: Monomial) -> tuple:
        cached = self._keys.get(m)
        if cached is None:
            cached = self._keys[m] = self.key(m)
        return cached

    def leading(self, terms: IntPoly) -> Monomial:
        return max(terms, key=self.k)

    def reduce(self, p: IntPoly, basis: Sequence[Element], full: bool = True) -> Tuple[IntPoly, Fraction]:
        p = dict(p)
        r: IntPoly = {}
        scale = Fraction(1)
        while p:
            if len(p) + len(r) > self.max_terms:
                raise ResourceLimitError(
                    "intermediate polynomial exceeds the term budget",
                    budget="max_terms", limit=self.max_terms, reached=len(p) + len(r),
                )
            m = self.leading(p)
            c = p[m]
            for g in basis:
                q = monomial_div(m, g.lm)
                if q is not None:
                    break
            else:
                if not full:
                    r.update(p)
                    return r, scale
                r[m] = c
                del p[m]
                continue
            d = gcd(c, g.lc)
            fa, fb = g.lc // d, c // d
            if fa < 0:
                fa, fb = -fa, -fb
            if fa != 1:
                p = {mm: v * fa for mm, v in p.items()}
                if r:
                    r = {mm: v * fa for mm, v in r.items()}
                scale *= fa
            for gm, gc in g.terms.items():
                mm = monomial_mul(gm, q)
                v = p.get(mm, 0) - fb * gc
                if v:
                    p[mm] = v
                else:
                    p.pop(mm, None)
            if p and max(abs(v) for v in p.values()).bit_length() > CONTENT_BITS:
                content = reduce(gcd, list(p.values()) + list(r.values()))
                if content > 1:
                    p = {mm: v // content for mm, v in p.items()}
                    r = {mm: v // content for mm, v in r.items()}
                    scale /= content
        if r:
            content = reduce(gcd, r.values())
            if content > 1:
                r = {mm: v // content for mm, v in r.items()}
                scale /= content
        return r, scale


def s_polynomial(f: Element, g: Element) -> IntPoly:
    lcm = monomial_lcm(f.lm, g.lm)
    mf = monomial_div(lcm, f.lm)
    mg = monomial_div(lcm, g.lm)
    d = gcd(f.lc, g.lc)
    cf, cg = g.lc // d, f.lc // d
    s: IntPoly = {}
    for m, c in f.terms.items():
        mm = monomial_mul(m, mf)
        s[mm] = s.get(mm, 0) + cf * c
    for m, c in g.terms.items():
        mm = monomial_mul(m, mg)
        v = s.get(mm, 0) - cg * c
        if v:
            s[mm] = v
        else:
            s.pop(mm, None)
    return {m: c for m, c in s.items() if c}


class Buchberger:
    """One Groebner basis computation with explicit pair and term budgets."""

    def __init__(self, key: Callable, max_pairs: int, max_terms: int):
        self.key = key
        self.max_pairs = max_pairs
        self.reducer = Reducer(key, max_terms)
        self.f: List[Element] = []
        self.pairs_processed = 0

    def _update(self, G: Set[int], B: Set[Tuple[int, int]], ih: int):
        mh = self.f[ih].lm

        def lm(i: int) -> Monomial:
            return self.f[i].lm

        C = sorted(G)
        D: List[Tuple[int, int]] = []
        while C:
            ig = C.pop()
            lcm_hg = monomial_lcm(mh, lm(ig))

            def lcm_divides(ip: int) -> bool:
                return monomial_divides(monomial_lcm(mh, lm(ip)), lcm_hg)

            coprime = monomial_mul(mh, lm(ig)) == lcm_hg
            if coprime or (not any(lcm_divides(ip) for ip in C) and not any(lcm_divides(pr[1]) for pr in D)):
                D.append((ih, ig))

        E = {(ih, ig) for ih_, ig in D if monomial_mul(mh, lm(ig)) != monomial_lcm(mh, lm(ig))}

        B_new = set()
        for ig1, ig2 in B:
            lcm12 = monomial_lcm(lm(ig1), lm(ig2))
            if (
                not monomial_divides(mh, lcm12)
                or monomial_lcm(lm(ig1), mh) == lcm12
                or monomial_lcm(lm(ig2), mh) == lcm12
            ):
                B_new.add((ig1, ig2))
        B_new |= E

        G_new = {ig for ig in G if not monomial_divides(mh, lm(ig))}
        G_new.add(ih)
        return G_new, B_new

    def _pair_key(self, pair: Tuple[int, int]):
        i, j = pair
        return (self.reducer.k(monomial_lcm(self.f[i].lm, self.f[j].lm)), pair)

    def run(self, polys: Sequence[IntPoly]) -> List[IntPoly]:
        k = self.reducer.k
        inputs = [primitive(p) for p in polys if p]
        if not inputs:
            return []
        inputs.sort(key=lambda p: k(self.reducer.leading(p)))

        G: Set[int] = set()
        B: Set[Tuple[int, int]] = set()
        for p in inputs:
            current = [self.f[i] for i in sorted(G)]
            r, _ = self.reducer.reduce(p, current)
            if not r:
                continue
            if all(not any(m) for m in r):
                return [{next(iter(r)): 1}]
            self.f.append(make_element(primitive(r), k))
            G, B = self._update(G, B, len(self.f) - 1)

        while B:
            pair = min(B, key=self._pair_key)
            B.remove(pair)
            self.pairs_processed += 1
            if self.pairs_processed > self.max_pairs:
                raise ResourceLimitError(
                    "Groebner pair budget exhausted",
                    budget="max_pairs", limit=self.max_pairs, reached=self.pairs_processed,
                )
            if self.pairs_processed % 500 == 0:
                logger.debug("buchberger progress: %d pairs, %d queued, basis size %d",
                             self.pairs_processed, len(B), len(G))
            s = s_polynomial(self.f[pair[0]], self.f[pair[1]])
            if not s:
                continue
            r, _ = self.reducer.reduce(s, [self.f[i] for i in sorted(G)])
            if not r:
                continue
            if all(not any(m) for m in r):
                return [{next(iter(r)): 1}]
            self.f.append(make_element(primitive(r), k))
            G, B = self._update(G, B, len(self.f) - 1)

        return self._interreduce(G)

    def _interreduce(self, G: Set[int]) -> List[IntPoly]:
        k = self.reducer.k
        minimal = [
            self.f[i] for i in sorted(G)
            if not any(j != i and monomial_divides(self.f[j].lm, self.f[i].lm) for j in G)
        ]
        minimal.sort(key=lambda e: k(e.lm), reverse=True)
        reduced: List[IntPoly] = []
        for idx, e in enumerate(minimal):
            others = minimal[:idx] + minimal[idx + 1:]
            tail = {m: c for m, c in e.terms.items() if m != e.lm}
            r, scale = self.reducer.reduce(tail, others)
            # scale * tail == r modulo others, so e scaled by s has tail r
            lead = scale * e.lc
            result = {m: Fraction(c) for m, c in r.items()}
            result[e.lm] = lead
            den = reduce(lambda a, b: a * b // gcd(a, b), (v.denominator for v in result.values()), 1)
            ints = {m: int(v * den) for m, v in result.items()}
            reduced.append(make_element(primitive(ints), k).terms)
        return reduced


def groebner_integer(polys: Sequence[IntPoly], key: Callable, max_pairs: int, max_terms: int) -> List[IntPoly]:
    """Reduced Groebner basis of integer polynomials, each element primitive."""
    engine = Buchberger(key, max_pairs, max_terms)
    basis = engine.run(polys)
    logger.debug("groebner basis: %d elements after %d pairs", len(basis), engine.pairs_processed)
    return basis
