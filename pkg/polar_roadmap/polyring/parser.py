"""
Recursive-descent parser for the polynomial text grammar.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INTEGER)?
    atom   := INTEGER | IDENTIFIER | '(' expr ')'

Juxtaposition (implicit multiplication) is an error, and ``/`` only accepts
nonzero constant divisors. Whitespace, including newlines, is insignificant.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Union

from polar_roadmap.common.errors import ExponentOverflowError, ParseError, UndeclaredVariableError
from polar_roadmap.polyring.poly import Poly
from polar_roadmap.polyring.ring import PolyRing

MAX_EXPONENT = 10_000

_SINGLE = {"+", "-", "*", "/", "^", "(", ")"}


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    line: int
    column: int


def tokenize(src: str) -> List[Token]:
    tokens: List[Token] = []
    line, col, i = 1, 1, 0
    while i < len(src):
        ch = src[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if ch.isspace():
            col, i = col + 1, i + 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            tokens.append(Token("int", src[i:j], line, start_col))
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(Token("name", src[i:j], line, start_col))
        elif ch in _SINGLE:
            j = i + 1
            tokens.append(Token("op", ch, line, start_col))
        else:
            raise ParseError(f"unexpected character {ch!r}", line, start_col)
        col += j - i
        i = j
    tokens.append(Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, src: str, ring: PolyRing):
        self.ring = ring
        self.tokens = tokenize(src)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok: Token = None) -> ParseError:
        tok = tok or self.current
        return ParseError(message, tok.line, tok.column)

    def is_op(self, text: str) -> bool:
        return self.current.kind == "op" and self.current.text == text

    def parse(self) -> Poly:
        if self.current.kind == "end":
            raise self.error("empty expression")
        result = self.expr()
        if self.current.kind != "end":
            raise self.error(f"unexpected token {self.current.text!r}")
        return result

    def expr(self) -> Poly:
        result = self.term()
        while self.is_op("+") or self.is_op("-"):
            op = self.advance().text
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Poly:
        result = self.unary()
        while self.is_op("*") or self.is_op("/"):
            op_tok = self.advance()
            rhs = self.unary()
            if op_tok.text == "*":
                result = result * rhs
            else:
                if not rhs.is_constant():
                    raise self.error("division by a non-constant polynomial", op_tok)
                if rhs.is_zero():
                    raise self.error("division by zero", op_tok)
                result = result / rhs.constant_value()
        return result

    def unary(self) -> Poly:
        if self.is_op("-"):
            self.advance()
            return -self.unary()
        if self.is_op("+"):
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.is_op("^"):
            caret = self.advance()
            tok = self.current
            if tok.kind != "int":
                raise self.error("exponent must be a non-negative integer literal")
            self.advance()
            exponent = int(tok.text)
            if exponent > MAX_EXPONENT:
                raise ExponentOverflowError(f"exponent {exponent} exceeds {MAX_EXPONENT}", tok.line, tok.column)
            if self.is_op("^"):
                raise self.error("chained exponents need parentheses", caret)
            base = base ** exponent
        if self.current.kind in ("int", "name") or self.is_op("("):
            raise self.error("implicit multiplication is not allowed; use '*'")
        return base

    def atom(self) -> Poly:
        tok = self.current
        if tok.kind == "int":
            self.advance()
            return Poly.constant(self.ring, int(tok.text))
        if tok.kind == "name":
            self.advance()
            if tok.text not in self.ring.names:
                raise UndeclaredVariableError(f"undeclared variable {tok.text!r}", tok.line, tok.column)
            return Poly.var(self.ring, tok.text)
        if self.is_op("("):
            self.advance()
            inner = self.expr()
            if not self.is_op(")"):
                raise self.error("expected ')'")
            self.advance()
            return inner
        if tok.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected token {tok.text!r}")


def parse_poly(src: str, ring: Union[PolyRing, Sequence[str]]) -> Poly:
    """Parse ``src`` into an exact polynomial of ``ring``."""
    if not isinstance(ring, PolyRing):
        ring = PolyRing.user(list(ring))
    return _Parser(src, ring).parse()


def parse_poly_list(src: str, ring: PolyRing, separator: str = ";") -> List[Poly]:
    return [parse_poly(piece, ring) for piece in src.split(separator) if piece.strip()]


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}", 1, 1) from None
