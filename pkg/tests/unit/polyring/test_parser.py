from fractions import Fraction

import pytest

from polar_roadmap.common.errors import ExponentOverflowError, ParseError, UndeclaredVariableError
from polar_roadmap.polyring.parser import MAX_EXPONENT, parse_poly, parse_poly_list, parse_rational, tokenize
from polar_roadmap.polyring.poly import Poly


class TestParser:
    """Test cases for the polynomial expression parser."""

    def test_precedence(self, ring2):
        """Test that powers bind tighter than products and unary minus."""
        x1, x2 = Poly.gens(ring2)
        assert parse_poly("-x1^2", ring2) == -(x1 ** 2)
        assert parse_poly("2*x1 + 3*x2^2", ring2) == 2 * x1 + 3 * x2 ** 2
        assert parse_poly("(x1 - 1)^2", ring2) == x1 ** 2 - 2 * x1 + 1

    def test_rational_coefficients(self, ring2):
        """Test division by constants."""
        p = parse_poly("x1/3 - 1/2", ring2)
        assert p.terms[(1, 0)] == Fraction(1, 3)
        assert p.terms[(0, 0)] == Fraction(-1, 2)

    def test_names_ring(self):
        """Test that a plain name list builds a user ring."""
        p = parse_poly("a*b + c", ["a", "b", "c"])
        assert p.ring.names == ("a", "b", "c")

    def test_undeclared_variable(self, ring2):
        """Test that unknown names report their position."""
        with pytest.raises(UndeclaredVariableError) as exc_info:
            parse_poly("x1 + z", ring2)
        assert exc_info.value.column == 6

    def test_implicit_multiplication_rejected(self, ring2):
        """Test that juxtaposition is an error."""
        with pytest.raises(ParseError):
            parse_poly("2x1", ring2)
        with pytest.raises(ParseError):
            parse_poly("x1 (x2)", ring2)

    def test_division_by_polynomial_rejected(self, ring2):
        """Test that only constant divisors are allowed."""
        with pytest.raises(ParseError):
            parse_poly("x1 / x2", ring2)
        with pytest.raises(ParseError):
            parse_poly("x1 / 0", ring2)

    def test_exponent_limits(self, ring2):
        """Test exponent validation."""
        with pytest.raises(ExponentOverflowError):
            parse_poly(f"x1^{MAX_EXPONENT + 1}", ring2)
        with pytest.raises(ParseError):
            parse_poly("x1^x2", ring2)
        with pytest.raises(ParseError):
            parse_poly("x1^2^3", ring2)

    def test_empty_and_unbalanced(self, ring2):
        """Test structural errors."""
        for src in ("", "(x1 + 1", "x1 +", "x1 )"):
            with pytest.raises(ParseError):
                parse_poly(src, ring2)

    def test_tokens_track_lines(self):
        """Test line and column bookkeeping across newlines."""
        tokens = tokenize("x1 +\n  x2")
        x2 = [t for t in tokens if t.text == "x2"][0]
        assert (x2.line, x2.column) == (2, 3)

    def test_lists_and_rationals(self, ring2):
        """Test the helpers used by job files."""
        assert len(parse_poly_list("x1; x2 ;", ring2)) == 2
        assert parse_rational(" 3/4 ") == Fraction(3, 4)
        assert parse_rational("-2") == -2
        with pytest.raises(ParseError):
            parse_rational("1/0")
