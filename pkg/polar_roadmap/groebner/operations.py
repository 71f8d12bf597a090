"""
Ideal operations built on reduced Groebner bases: membership, elimination,
saturation, intersection, quotient bases and Krull dimension.
"""
from collections import deque
from itertools import combinations
import logging
from typing import List, Optional, Sequence, Union

from polar_roadmap.common.errors import InvalidInputError, NotZeroDimensionalError, RingMismatchError
from polar_roadmap.groebner.ideal import GroebnerBasis, Ideal
from polar_roadmap.polyring.poly import Poly
from polar_roadmap.polyring.ring import GREVLEX, Monomial, MonomialOrder, PolyRing, monomial_divides, monomial_mul

logger = logging.getLogger(__name__)


def groebner_basis(ideal: Ideal, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    return ideal.groebner_basis(order)


def normal_form(p: Poly, basis: GroebnerBasis) -> Poly:
    return basis.normal_form(p)


def ideal_membership(p: Poly, ideal: Ideal) -> bool:
    if p.ring != ideal.ring:
        raise RingMismatchError("polynomial and ideal belong to different rings")
    return ideal.contains(p)


def _indices(ring: PolyRing, variables: Sequence[Union[int, str]]) -> List[int]:
    return sorted({ring.index(v) if isinstance(v, str) else int(v) for v in variables})


def elimination_ideal(ideal: Ideal, keep: Sequence[Union[int, str]]) -> Ideal:
    """
    I intersected with Q[keep], as an ideal of the same ring whose generators
    only involve the kept variables.
    """
    ring = ideal.ring
    kept = _indices(ring, keep)
    if any(not 0 <= k < ring.nvars for k in kept):
        raise InvalidInputError("kept variable out of range", keep=str(kept))
    eliminated = [k for k in range(ring.nvars) if k not in kept]
    if not eliminated:
        basis = ideal.groebner_basis(GREVLEX)
        result = ideal.derive(basis.elements)
        result.seed_basis(basis)
        return result
    if ideal.is_zero_ideal:
        return ideal.derive([])
    order = MonomialOrder.block(eliminated)
    basis = ideal.groebner_basis(order)
    keep_set = set(kept)
    survivors = [g for g in basis.elements if set(g.support()) <= keep_set]
    logger.debug("elimination kept %d of %d basis elements", len(survivors), len(basis.elements))
    return ideal.derive(survivors)


def project_to_ring(ideal: Ideal, ring: PolyRing, positions: Sequence[int]) -> Ideal:
    """Relabel an ideal whose generators live in the ``positions`` variables into ``ring``."""
    return Ideal(ring, [g.restrict(ring, positions) for g in ideal.generators], ideal.settings)


def _with_auxiliary(ideal: Ideal, stem: str = "t"):
    ring = ideal.ring
    extended = ring.extend([ring.fresh_name(stem)])
    t = Poly.var(extended, ring.nvars)
    return extended, t


def saturation(ideal: Ideal, h: Poly) -> Ideal:
    """
    I : h^oo via I + <t*h - 1> with t eliminated.
    """
    if h.ring != ideal.ring:
        raise RingMismatchError("saturating polynomial belongs to a different ring")
    if h.is_zero():
        raise InvalidInputError("cannot saturate by the zero polynomial")
    if h.is_constant() or ideal.is_zero_ideal:
        return ideal
    ring = ideal.ring
    extended, t = _with_auxiliary(ideal)
    gens = [g.embed(extended) for g in ideal.generators] + [t * h.embed(extended) - 1]
    eliminated = elimination_ideal(ideal.derive(gens, ring=extended), range(ring.nvars))
    return project_to_ring(eliminated, ring, range(ring.nvars))


def intersect_ideals(first: Ideal, second: Ideal) -> Ideal:
    """I cap J via t*I + (1 - t)*J with t eliminated."""
    if first.ring != second.ring:
        raise RingMismatchError("ideals belong to different rings")
    if first.is_zero_ideal or second.is_zero_ideal:
        return first.derive([])
    if first.is_unit():
        return second
    if second.is_unit():
        return first
    ring = first.ring
    extended, t = _with_auxiliary(first)
    gens = [t * g.embed(extended) for g in first.generators]
    gens += [(1 - t) * g.embed(extended) for g in second.generators]
    eliminated = elimination_ideal(first.derive(gens, ring=extended), range(ring.nvars))
    return project_to_ring(eliminated, ring, range(ring.nvars))


def radical_contains(ideal: Ideal, h: Poly) -> bool:
    """Rabinowitsch test: h vanishes on V(I) iff 1 is in I + <1 - t*h>."""
    if h.is_zero():
        return True
    extended, t = _with_auxiliary(ideal)
    gens = [g.embed(extended) for g in ideal.generators] + [1 - t * h.embed(extended)]
    return ideal.derive(gens, ring=extended).is_unit()


def _is_standard(m: Monomial, leading: Sequence[Monomial]) -> bool:
    return not any(monomial_divides(lm, m) for lm in leading)


def quotient_basis(basis: GroebnerBasis) -> List[Monomial]:
    """
    Standard monomials of a zero-dimensional ideal, in increasing order.
    """
    ring = basis.ring
    leading = basis.leading_monomials
    if basis.is_unit():
        return []
    for k in range(ring.nvars):
        if not any(lm[k] > 0 and sum(lm) == lm[k] for lm in leading):
            dimension = krull_dimension_from_leading(leading, ring.nvars)
            raise NotZeroDimensionalError(
                f"ideal is not zero-dimensional: no pure power of {ring.names[k]} is a leading monomial",
                dimension=dimension,
            )
    one = ring.unit_monomial()
    seen = {one}
    queue = deque([one])
    while queue:
        m = queue.popleft()
        for k in range(ring.nvars):
            nxt = monomial_mul(m, ring.unit_monomial(k))
            if nxt not in seen and _is_standard(nxt, leading):
                seen.add(nxt)
                queue.append(nxt)
    return sorted(seen, key=basis.order.key)


def krull_dimension_from_leading(leading: Sequence[Monomial], nvars: int) -> int:
    """
    Largest set of variables no leading monomial is supported on.
    """
    if any(not any(lm) for lm in leading):
        return -1
    supports = [frozenset(i for i, e in enumerate(lm) if e) for lm in leading]
    for size in range(nvars, -1, -1):
        for subset in combinations(range(nvars), size):
            chosen = set(subset)
            if all(not s <= chosen for s in supports):
                return size
    return 0


def krull_dimension(ideal: Ideal) -> int:
    """Krull dimension of Q[x]/I; -1 for the unit ideal."""
    if ideal.is_zero_ideal:
        return ideal.ring.nvars
    basis = ideal.groebner_basis(GREVLEX)
    return krull_dimension_from_leading(basis.leading_monomials, ideal.ring.nvars)


def is_zero_dimensional(ideal: Ideal) -> bool:
    return krull_dimension(ideal) == 0


def ideal_equal(first: Ideal, second: Ideal) -> bool:
    return first.equals(second)


def restrict_univariate(ideal: Ideal, index: int) -> Optional[Poly]:
    """Generator of I cap Q[x_index], or ``None`` if that intersection is zero."""
    eliminated = elimination_ideal(ideal, [index])
    if eliminated.is_zero_ideal:
        return None
    return min(eliminated.generators, key=lambda g: g.degree())
