"""Tokenizer and expression parser shared by the DSL and :func:`parse_poly`.

Expressions are sums of products of numbers, variables and parenthesised
subexpressions.  Juxtaposition means multiplication (``2x``, ``(d + x) L``).
Identifiers listed as *basis* names evaluate to unit vectors, so the same
grammar reads both scalar polynomials and linear combinations such as
``(d + 2x) A + beta*(2x + d) B``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Sequence

from .polyring import RESERVED, UNICODE_ALIASES, ONE, ZERO, Poly


class DSLSyntaxError(ValueError):
    """Parse error carrying a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "ident", "op", "eof"
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<num>\d+)"
    r"|(?P<ident>[A-Za-zͰ-Ͽ∂][A-Za-z0-9_Ͱ-Ͽ]*)"
    r"|(?P<op>->|[-+*/^(),;{}=\[\]:])"
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("num", "ident", "op"):
            value = m.group()
            if kind == "ident":
                value = UNICODE_ALIASES.get(value, value)
            tokens.append(Token(kind, value, line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class Vector:
    """Linear combination of basis names with polynomial coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Dict[str, Poly]):
        self.coeffs = {k: v for k, v in coeffs.items() if v}

    def __add__(self, other: "Vector") -> "Vector":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return Vector(out)

    def scale(self, p: Poly) -> "Vector":
        return Vector({k: v * p for k, v in self.coeffs.items()})

    def __neg__(self) -> "Vector":
        return self.scale(-ONE)


class TokenStream:
    def __init__(self, tokens: Sequence[Token]):
        self.tokens = list(tokens)
        self.pos = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek
        return tok.kind in ("op", "ident") and tok.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.next()
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.peek
        if not self.at(text):
            found = tok.text or "end of input"
            raise DSLSyntaxError(f"expected {text!r}, found {found!r}", tok.line, tok.column)
        return self.next()

    def expect_ident(self, what: str = "identifier") -> Token:
        tok = self.peek
        if tok.kind != "ident":
            found = tok.text or "end of input"
            raise DSLSyntaxError(f"expected {what}, found {found!r}", tok.line, tok.column)
        return self.next()

    def error(self, message: str, tok: Token | None = None) -> DSLSyntaxError:
        tok = tok or self.peek
        return DSLSyntaxError(message, tok.line, tok.column)


class ExpressionParser:
    """Recursive descent over ``sum := term (('+'|'-') term)*`` and friends.

    ``variables`` are the identifiers allowed as polynomial variables
    (reserved names plus declared parameters); ``basis`` names produce
    vectors.  Anything else is an unresolved reference.
    """

    def __init__(self, stream: TokenStream, variables: Iterable[str], basis: Iterable[str] = ()):
        self.s = stream
        self.variables = set(variables) | set(RESERVED)
        self.basis = list(basis)

    def parse_poly(self) -> Poly:
        start = self.s.peek
        value = self.sum()
        if isinstance(value, Vector):
            raise self.s.error("expected a polynomial, found a vector expression", start)
        return value

    def parse_vector(self) -> Vector:
        start = self.s.peek
        value = self.sum()
        if isinstance(value, Poly):
            if value:
                raise self.s.error("expected a combination of basis elements", start)
            return Vector({})
        return value

    def sum(self):
        value = self.term()
        while self.s.at("+") or self.s.at("-"):
            op = self.s.next()
            rhs = self.term()
            value = self._add(value, rhs if op.text == "+" else self._neg(rhs), op)
        return value

    def term(self):
        value = self.unary()
        while True:
            tok = self.s.peek
            if self.s.at("*"):
                self.s.next()
                value = self._mul(value, self.unary(), tok)
            elif self.s.at("/"):
                self.s.next()
                divisor = self.unary()
                if not isinstance(divisor, Poly) or not divisor.is_constant() or not divisor:
                    raise self.s.error("division only by nonzero rational constants", tok)
                value = self._mul(value, Poly.const(1 / divisor.constant_value()), tok)
            elif tok.kind in ("num", "ident") or self.s.at("("):
                value = self._mul(value, self.unary(), tok)
            else:
                return value

    def unary(self):
        if self.s.at("-"):
            self.s.next()
            return self._neg(self.unary())
        if self.s.at("+"):
            self.s.next()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.s.at("^"):
            tok = self.s.next()
            exp = self.s.peek
            if exp.kind != "num":
                raise self.s.error("exponent must be a nonnegative integer", exp)
            self.s.next()
            if isinstance(base, Vector):
                raise self.s.error("cannot raise a vector to a power", tok)
            return base ** int(exp.text)
        return base

    def atom(self):
        tok = self.s.peek
        if tok.kind == "num":
            self.s.next()
            return Poly.const(int(tok.text))
        if tok.kind == "ident":
            self.s.next()
            if tok.text in self.basis:
                return Vector({tok.text: ONE})
            if tok.text in self.variables:
                return Poly.var(tok.text)
            raise DSLSyntaxError(f"unresolved name {tok.text!r}", tok.line, tok.column)
        if self.s.at("("):
            self.s.next()
            value = self.sum()
            self.s.expect(")")
            return value
        found = tok.text or "end of input"
        raise DSLSyntaxError(f"unexpected {found!r} in expression", tok.line, tok.column)

    def _add(self, a, b, tok):
        if isinstance(a, Poly) and isinstance(b, Poly):
            return a + b
        if isinstance(a, Vector) and isinstance(b, Vector):
            return a + b
        scalar = a if isinstance(a, Poly) else b
        if not scalar:
            return b if isinstance(a, Poly) else a
        raise self.s.error("cannot add a polynomial to a vector", tok)

    def _neg(self, a):
        return -a

    def _mul(self, a, b, tok):
        if isinstance(a, Poly) and isinstance(b, Poly):
            return a * b
        if isinstance(a, Vector) and isinstance(b, Vector):
            raise self.s.error("cannot multiply two vectors", tok)
        return a.scale(b) if isinstance(a, Vector) else b.scale(a)


def parse_poly(text: str, params: Iterable[str] | None = None) -> Poly:
    """Parse a polynomial.  With ``params=None`` any identifier is accepted."""
    stream = TokenStream(tokenize(text))
    if params is None:
        params = {t.text for t in stream.tokens if t.kind == "ident"}
    value = ExpressionParser(stream, params).parse_poly()
    if stream.peek.kind != "eof":
        raise stream.error(f"unexpected {stream.peek.text!r} after expression")
    return value


def parse_fraction(text: str) -> Fraction:
    return parse_poly(text, ()).constant_value()
