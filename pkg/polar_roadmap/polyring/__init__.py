from polar_roadmap.polyring.interval import Interval
from polar_roadmap.polyring.matrix import PolyMatrix, matrix_determinant
from polar_roadmap.polyring.parser import parse_poly, parse_poly_list, parse_rational
from polar_roadmap.polyring.poly import ZERO_DEGREE, Poly, poly_arith
from polar_roadmap.polyring.ring import GREVLEX, LEX, MonomialOrder, OrderKind, PolyRing

__all__ = [
    "GREVLEX",
    "LEX",
    "ZERO_DEGREE",
    "Interval",
    "MonomialOrder",
    "OrderKind",
    "Poly",
    "PolyMatrix",
    "PolyRing",
    "parse_poly",
    "parse_poly_list",
    "matrix_determinant",
    "parse_rational",
    "poly_arith",
]
