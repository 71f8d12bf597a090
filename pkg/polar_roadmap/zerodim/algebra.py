"""
The finite-dimensional algebra Q[x]/I of a zero-dimensional ideal:
multiplication matrices, Hermite trace forms and minimal polynomials.

Vectors are sparse dicts ``{basis index: Fraction}``; matrices are lists of
such columns (column j is the image of the j-th standard monomial).
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from polar_roadmap.common.config import SignatureMethod
from polar_roadmap.common.errors import InvalidInputError
from polar_roadmap.groebner.ideal import GroebnerBasis
from polar_roadmap.groebner.operations import quotient_basis
from polar_roadmap.polyring.poly import Poly
from polar_roadmap.polyring.ring import Monomial, monomial_div, monomial_mul
from polar_roadmap.zerodim.univariate import sign_variations

logger = logging.getLogger(__name__)

Vector = Dict[int, Fraction]
SparseMatrix = List[Vector]


def mat_vec(matrix: SparseMatrix, v: Vector) -> Vector:
    out: Vector = {}
    for j, x in v.items():
        for i, a in matrix[j].items():
            y = out.get(i, 0) + a * x
            if y:
                out[i] = y
            else:
                out.pop(i, None)
    return out


def dense(matrix: SparseMatrix, size: int) -> List[List[Fraction]]:
    rows = [[Fraction(0)] * size for _ in range(size)]
    for j, col in enumerate(matrix):
        for i, a in col.items():
            rows[i][j] = a
    return rows


@dataclass(frozen=True)
class TraceForm:
    """Symmetric matrix Tr(h * b_i * b_j) on the quotient basis."""
    basis: Tuple[Monomial, ...]
    matrix: Tuple[Tuple[Fraction, ...], ...]

    @property
    def size(self) -> int:
        return len(self.basis)

    def inertia(self, method: SignatureMethod = SignatureMethod.CONGRUENCE) -> Tuple[int, int]:
        """(number of positive, number of negative) eigenvalues."""
        if method is SignatureMethod.CHARPOLY:
            return charpoly_inertia(self.matrix)
        return congruence_inertia(self.matrix)

    def rank(self, method: SignatureMethod = SignatureMethod.CONGRUENCE) -> int:
        pos, neg = self.inertia(method)
        return pos + neg

    def signature(self, method: SignatureMethod = SignatureMethod.CONGRUENCE) -> int:
        pos, neg = self.inertia(method)
        return pos - neg


def congruence_inertia(matrix: Sequence[Sequence[Fraction]]) -> Tuple[int, int]:
    """
    Symmetric Gaussian elimination by congruence (Lagrange reduction).
    """
    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    active = list(range(n))
    pos = neg = 0
    while active:
        pivot = next((k for k in active if a[k][k]), None)
        if pivot is None:
            pair = next(((i, j) for i in active for j in active if i < j and a[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # row_i += row_j and col_i += col_j makes a[i][i] = 2 a[i][j] != 0
            for k in active:
                a[i][k] += a[j][k]
            for k in active:
                a[k][i] += a[k][j]
            pivot = i
        p = a[pivot][pivot]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(pivot)
        row = a[pivot]
        for r in active:
            f = a[r][pivot]
            if not f:
                continue
            f = f / p
            target = a[r]
            for c in active:
                if row[c]:
                    target[c] -= f * row[c]
    return pos, neg


def characteristic_polynomial(matrix: Sequence[Sequence[Fraction]]) -> List[Fraction]:
    """Faddeev-LeVerrier; coefficients lowest degree first, monic."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        for i in range(n):
            m[i][i] += coeffs[n - k + 1]
        am = [[sum(a[i][t] * m[t][j] for t in range(n) if a[i][t]) for j in range(n)] for i in range(n)]
        trace = sum(am[i][i] for i in range(n))
        coeffs[n - k] = -trace / k
        m = am
    return coeffs


def charpoly_inertia(matrix: Sequence[Sequence[Fraction]]) -> Tuple[int, int]:
    """
    Inertia of a symmetric matrix from Descartes' rule on its characteristic
    polynomial, which is exact because every root is real.
    """
    coeffs = characteristic_polynomial(matrix)
    zero_mult = next(i for i, c in enumerate(coeffs) if c)
    reduced = coeffs[zero_mult:]
    pos = sign_variations(reduced)
    neg = sign_variations([c if i % 2 == 0 else -c for i, c in enumerate(reduced)])
    return pos, neg


class QuotientAlgebra:
    """Q[x]/I for the reduced basis of a zero-dimensional ideal."""

    def __init__(self, basis: GroebnerBasis):
        self.groebner = basis
        self.ring = basis.ring
        self.monomials: Tuple[Monomial, ...] = tuple(quotient_basis(basis))
        self.index: Dict[Monomial, int] = {m: i for i, m in enumerate(self.monomials)}
        self._products: Dict[Tuple[int, int], Vector] = {}

    @property
    def dimension(self) -> int:
        return len(self.monomials)

    def coordinates(self, p: Poly) -> Vector:
        """Coordinates of the normal form of ``p`` on the standard monomials."""
        nf = self.groebner.normal_form(p)
        return {self.index[m]: c for m, c in nf.terms.items()}

    def to_poly(self, v: Vector) -> Poly:
        return Poly(self.ring, {self.monomials[i]: c for i, c in v.items()})

    def multiplication_columns(self, var: int) -> SparseMatrix:
        return self._multiplication[var]

    @cached_property
    def _multiplication(self) -> List[SparseMatrix]:
        matrices = []
        for k in range(self.ring.nvars):
            xk = self.ring.unit_monomial(k)
            columns = []
            for m in self.monomials:
                product = monomial_mul(m, xk)
                if product in self.index:
                    columns.append({self.index[product]: Fraction(1)})
                else:
                    columns.append(self.coordinates(Poly.monomial(self.ring, product)))
            matrices.append(columns)
        logger.debug("multiplication matrices built for a quotient of dimension %d", self.dimension)
        return matrices

    def multiplication_matrix(self, var: int) -> List[List[Fraction]]:
        if not 0 <= var < self.ring.nvars:
            raise InvalidInputError("variable index out of range", var=var)
        return dense(self._multiplication[var], self.dimension)

    def element_columns(self, h: Poly) -> SparseMatrix:
        """Multiplication by an arbitrary element ``h``."""
        hv = self.coordinates(h)
        return [self.multiply(hv, {j: Fraction(1)}) for j in range(self.dimension)]

    def multiply_by_monomial(self, m: Monomial, v: Vector) -> Vector:
        for k, e in enumerate(m):
            for _ in range(e):
                v = mat_vec(self._multiplication[k], v)
        return v

    def multiply(self, a: Vector, b: Vector) -> Vector:
        out: Vector = {}
        for i, x in a.items():
            for j, y in self.multiply_by_monomial(self.monomials[i], b).items():
                z = out.get(j, 0) + x * y
                if z:
                    out[j] = z
                else:
                    out.pop(j, None)
        return out

    def basis_product(self, i: int, j: int) -> Vector:
        """Coordinates of b_i * b_j, memoised and built by one mat-vec from a smaller product."""
        if i > j:
            i, j = j, i
        key = (i, j)
        cached = self._products.get(key)
        if cached is not None:
            return cached
        mi = self.monomials[i]
        if not any(mi):
            result = {j: Fraction(1)}
        else:
            k = next(idx for idx, e in enumerate(mi) if e)
            parent = self.index[monomial_div(mi, self.ring.unit_monomial(k))]
            result = mat_vec(self._multiplication[k], self.basis_product(parent, j))
        self._products[key] = result
        return result

    @cached_property
    def traces(self) -> List[Fraction]:
        """Tr(multiplication by b_l) for every standard monomial b_l."""
        n = self.dimension
        return [sum((self.basis_product(l, j).get(j, Fraction(0)) for j in range(n)), Fraction(0)) for l in range(n)]

    def trace(self, v: Vector) -> Fraction:
        t = self.traces
        return sum((c * t[l] for l, c in v.items()), Fraction(0))

    def trace_form(self, h: Optional[Poly] = None) -> TraceForm:
        """
        Hermite form Tr(h * b_i * b_j); ``h`` defaults to 1.
        """
        n = self.dimension
        if h is None:
            weights = self.traces
        else:
            # Tr(h * b_l) = sum_m w_m Tr(b_m * b_l) with w the coordinates of h
            w = self.coordinates(h)
            weights = [
                sum((c * self.trace(self.basis_product(m, l)) for m, c in w.items()), Fraction(0))
                for l in range(n)
            ]
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                v = self.basis_product(i, j)
                value = sum((c * weights[l] for l, c in v.items()), Fraction(0))
                rows[i][j] = rows[j][i] = value
        return TraceForm(self.monomials, tuple(tuple(r) for r in rows))

    def krylov(self, columns: SparseMatrix, start: Optional[Vector] = None) -> Tuple[List[Fraction], List[Vector]]:
        """
        Minimal polynomial of ``columns`` on the cyclic space of ``start``
        (default: the unit element), with the Krylov vectors v, Mv, ...
        Returns (monic coefficients lowest first, Krylov vectors up to degree - 1).
        """
        one = self.index[self.ring.unit_monomial()]
        v = dict(start) if start is not None else {one: Fraction(1)}
        vectors: List[Vector] = []
        # echelon rows: (pivot, reduced vector, combination of Krylov vectors)
        echelon: List[Tuple[int, Vector, Vector]] = []
        current = v
        for step in range(self.dimension + 1):
            residual = dict(current)
            combo: Vector = {step: Fraction(1)}
            for pivot, row, row_combo in echelon:
                f = residual.get(pivot)
                if f:
                    f = f / row[pivot]
                    for idx, a in row.items():
                        y = residual.get(idx, 0) - f * a
                        if y:
                            residual[idx] = y
                        else:
                            residual.pop(idx, None)
                    for idx, a in row_combo.items():
                        y = combo.get(idx, 0) - f * a
                        if y:
                            combo[idx] = y
                        else:
                            combo.pop(idx, None)
            if not residual:
                lead = combo[step]
                coeffs = [combo.get(i, Fraction(0)) / lead for i in range(step + 1)]
                return coeffs, vectors
            pivot = min(residual)
            echelon.append((pivot, residual, combo))
            vectors.append(current)
            current = mat_vec(columns, current)
        raise InvalidInputError("Krylov iteration did not terminate")

    def minimal_polynomial(self, h: Poly) -> List[Fraction]:
        """Monic minimal polynomial of the element ``h`` (coefficients lowest first)."""
        coeffs, _ = self.krylov(self.element_columns(h))
        return coeffs

    def variable_minimal_polynomial(self, var: int) -> List[Fraction]:
        coeffs, _ = self.krylov(self._multiplication[var])
        return coeffs
