from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
import logging
from typing import List, Optional, Sequence, Tuple

from polar_roadmap.common.errors import DimensionMismatchError, InvalidInputError
from polar_roadmap.polyring.poly import Poly
from polar_roadmap.polyring.ring import PolyRing

logger = logging.getLogger(__name__)

# Below this size determinants use cofactor expansion, from it on Bareiss.
BAREISS_THRESHOLD = 4


@dataclass(frozen=True)
class PolyMatrix:
    """Row-major matrix of polynomials sharing one ring."""
    ring: PolyRing
    rows: int
    cols: int
    entries: Tuple[Poly, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatchError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                "entry count does not match the shape", expected=self.rows * self.cols, got=len(self.entries)
            )
        for p in self.entries:
            if p.ring != self.ring:
                raise DimensionMismatchError("matrix entries belong to different rings")

    @classmethod
    def from_rows(cls, ring: PolyRing, rows: Sequence[Sequence[Poly]], cols: Optional[int] = None) -> "PolyMatrix":
        rows = [list(r) for r in rows]
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        if any(len(r) != width for r in rows):
            raise DimensionMismatchError("ragged matrix rows")
        return cls(ring, len(rows), width, tuple(p for r in rows for p in r))

    @classmethod
    def identity(cls, ring: PolyRing, size: int) -> "PolyMatrix":
        one, zero = Poly.one(ring), Poly.zero(ring)
        return cls.from_rows(ring, [[one if i == j else zero for j in range(size)] for i in range(size)])

    def entry(self, i: int, j: int) -> Poly:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> List[Poly]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> List[List[Poly]]:
        return [self.row(i) for i in range(self.rows)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix.from_rows(self.ring, [[self.entry(i, j) for j in cols] for i in rows], cols=len(cols))

    def determinant(self) -> Poly:
        if self.rows != self.cols:
            raise DimensionMismatchError("determinant of a non-square matrix", rows=self.rows, cols=self.cols)
        if self.rows < BAREISS_THRESHOLD:
            return cofactor_determinant(self.to_rows(), self.ring)
        return bareiss_determinant(self.to_rows(), self.ring)

    def minors(self, k: int) -> List[Poly]:
        """All k x k minors, rows and columns taken in lexicographic combination order."""
        if not 1 <= k <= min(self.rows, self.cols):
            raise InvalidInputError("minor size out of range", k=k, rows=self.rows, cols=self.cols)
        return [
            self.submatrix(r, c).determinant()
            for r in combinations(range(self.rows), k)
            for c in combinations(range(self.cols), k)
        ]

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(p) for p in r) + "]" for r in self.to_rows()) + "]"


def cofactor_determinant(rows: List[List[Poly]], ring: PolyRing) -> Poly:
    """Laplace expansion along the first row. Also the oracle for Bareiss."""
    n = len(rows)
    if n == 0:
        return Poly.one(ring)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = Poly.zero(ring)
    for j, pivot in enumerate(rows[0]):
        if pivot.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = pivot * cofactor_determinant(minor, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def bareiss_determinant(rows: List[List[Poly]], ring: PolyRing) -> Poly:
    """
    Fraction-free Bareiss elimination; every division is exact.
    """
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return Poly.one(ring)
    sign = 1
    previous = Poly.one(ring)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not a[r][k].is_zero()), None)
            if swap is None:
                return Poly.zero(ring)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                numerator = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = numerator.exact_div(previous) if not previous.is_constant() else numerator / previous.constant_value()
        previous = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


# -- exact rational linear algebra ------------------------------------------

def rational_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a rational matrix by Gaussian elimination."""
    a = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        pivot = next((r for r in range(rank, len(a)) if a[r][c]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        for r in range(rank + 1, len(a)):
            if a[r][c]:
                f = a[r][c] / a[rank][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def rational_solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Sequence[Fraction]]) -> Optional[List[List[Fraction]]]:
    """
    Solve ``matrix @ X = rhs`` for a square nonsingular matrix; ``rhs`` holds
    one column per entry. Returns the solution columns, or ``None`` when the
    matrix is singular.
    """
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(col[i]) for col in rhs] for i, row in enumerate(matrix)]
    width = n + len(rhs)
    for c in range(n):
        pivot = next((r for r in range(c, n) if a[r][c]), None)
        if pivot is None:
            return None
        a[c], a[pivot] = a[pivot], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [[a[i][n + j] for i in range(n)] for j in range(width - n)]


def rational_inverse(matrix: Sequence[Sequence[Fraction]]) -> Optional[List[List[Fraction]]]:
    n = len(matrix)
    identity = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    cols = rational_solve(matrix, identity)
    if cols is None:
        return None
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def matrix_determinant(matrix: PolyMatrix) -> Poly:
    return matrix.determinant()
